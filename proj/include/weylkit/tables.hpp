#ifndef WEYLKIT_TABLES_HPP
#define WEYLKIT_TABLES_HPP

#include "weylkit/catalog.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

// Machine-readable encodings of the classification tables, with integrity
// validators and parameterized lookup.  Data files live under data/ (or
// $WEYLKIT_DATA); the format is versioned line-oriented text with a
// checksum header.

namespace weylkit::tables {

using namespace weylkit;
using catalog::AlgebraPtr;
using liealg::Subalgebra;
using repkit::Embedded;
using repkit::Module;
using rootsys::RootDatumPtr;
using rootsys::Series;

using Bindings = std::map<std::string, long>;

// integer/boolean expression evaluation over bindings (n, k, l, m, rk, ...)
long eval_int(const std::string& expr, const Bindings& b);
bool eval_cond(const std::string& expr, const Bindings& b);

// A row of any table: tagged fields, symbolic in the bindings.
struct Row {
    int id = 0;
    std::string variant;  // optional sub-case label
    std::map<std::string, std::string> fields;
    const std::string& field(const std::string& k) const;
    bool has(const std::string& k) const { return fields.count(k) > 0; }
};

struct TableFile {
    std::string name;
    std::string version;
    std::vector<Row> rows;
    std::vector<std::string> raw_lines;  // for byte-identical round trips
};

struct TableStore {
    std::map<std::string, TableFile> files;
    std::string dir;

    const TableFile& file(const std::string& name) const;
    const Row& row(const std::string& table, int id) const;
    std::vector<const Row*> rows_of(const std::string& table, int id) const;
};

std::string data_directory();  // env WEYLKIT_DATA or compiled default
TableStore load(const std::string& dir = "");

struct ValidationIssue {
    std::string table;
    int row;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    std::vector<std::string> passed;
    bool ok() const { return issues.empty(); }
};

// full integrity validation (checksums, parses, cross-table invariants)
ValidationReport load_and_validate(TableStore& store, bool deep = true);

// serialize a table file byte-identically
std::string serialize(const TableFile& f);

// ---- interpretation helpers --------------------------------------------------

// Parse a weight-expression list (pi(i), pi2(i), dpi(i), e(i), ee, rationals)
// in the ambient datum of g, under the bindings.
std::vector<Vec> eval_weight_list(const std::string& list, const RootDatumPtr& datum,
                                  const Bindings& b);
// single eps-expression
Vec eval_eps(const std::string& expr, const RootDatumPtr& datum, const Bindings& b);

// Instantiated Table-1/2 style row: ambient algebra name, subalgebra spec,
// Cartan-space span generators (in eps coordinates of g).
struct EssentialPair {
    int row = 0;
    std::string table;      // "t1" or "t2"
    std::string g_name;
    std::string h_spec;     // catalog spec
    Bindings bind;
    std::vector<Vec> a_gens;           // lattice generators of the span
    std::optional<size_t> a_dim;       // expected dimension
};

// All Table 1/2 rows matching the ambient datum with bindings solved from
// the (series, rank) of g's factors; h matching is by catalog spec equality.
std::vector<EssentialPair> essential_rows_for(const TableStore& store,
                                              const RootDatumPtr& g);

// Fingerprint-based lookup of an essential pair for (g, h): matches h
// against the instantiated catalog subalgebra of each candidate row.
std::optional<EssentialPair> lookup_essential(const TableStore& store, const AlgebraPtr& g,
                                              const Subalgebra& h);

// Instantiated Table 4 row: the W-essential triple with generator roots.
struct EssentialTriple {
    int row = 0;
    std::string g_name;
    std::string h_spec;
    Bindings bind;
    std::vector<Vec> module;      // highest weights over h (inner eps coords)
    std::vector<Vec> generators;  // reflection generators (ambient eps coords)
    std::string variant;
};

std::vector<EssentialTriple> table4_rows_for(const TableStore& store, const RootDatumPtr& g);

// build the subalgebra and module of a table-4 style row
Subalgebra instantiate_h(const AlgebraPtr& g, const std::string& h_spec, const Bindings& b);
// highest weights of the V-column over the embedded h
std::vector<Vec> instantiate_module_weights(const std::string& v_expr, const Embedded& eh,
                                            const Bindings& b);

// Table 3 large-subgroup families instantiated for a classical datum:
// the list of Delta_Gamma subsets (as root sets).
std::vector<std::vector<Vec>> table3_families(const TableStore& store, const RootDatumPtr& g);

// Table 7 k-constant formula
Rat table7_k(const TableStore& store, Series s, int rank);

// Table 8/9: restricted root data and the Gamma group generators on a(g,h)
struct UnderlineRow {
    int row = 0;
    std::string ng_type;                // e.g. "sl2^3", "so8", "C^n"
    std::string nh_type;
    std::vector<Vec> simple_roots;      // elements of a (ambient eps coords)
    std::string gamma_spec;             // W | A | Z2 | W+Z2 | A+Z2 | Wh | gens
    std::vector<Vec> gamma_gen_roots;   // when gamma_spec == gens
};
UnderlineRow underline_row(const TableStore& store, int row, const RootDatumPtr& g,
                           const Bindings& b);

// Distinguished embedding data per Table-1/2 row
struct EmbeddingRow {
    int row = 0;
    std::string table;
    std::string h_spec;
    std::string dim_ng;   // expression
    std::string dim_nh;
    bool l0_derived = false;  // E-rows: construct from the t8 data
};
std::optional<EmbeddingRow> embedding_row(const TableStore& store, const std::string& table,
                                          int row);

}  // namespace weylkit::tables

#endif
