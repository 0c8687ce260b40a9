#include "weylkit/tables.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace weylkit::tables {

// --- tiny integer expression language -----------------------------------------

namespace {

struct Lexer {
    std::string s;
    size_t pos = 0;
    void skip() {
        while (pos < s.size() && isspace((unsigned char)s[pos])) ++pos;
    }
    bool eat(const std::string& tok) {
        skip();
        if (s.compare(pos, tok.size(), tok) == 0) {
            if (isalpha((unsigned char)tok[0])) {
                size_t end = pos + tok.size();
                if (end < s.size() && (isalnum((unsigned char)s[end]) || s[end] == '_'))
                    return false;
            }
            pos += tok.size();
            return true;
        }
        return false;
    }
    bool peek(char c) {
        skip();
        return pos < s.size() && s[pos] == c;
    }
    bool done() {
        skip();
        return pos >= s.size();
    }
};

long parse_expr(Lexer& lx, const Bindings& b);

long parse_factor(Lexer& lx, const Bindings& b) {
    lx.skip();
    if (lx.eat("-")) return -parse_factor(lx, b);
    if (lx.eat("(")) {
        long v = parse_expr(lx, b);
        if (!lx.eat(")")) throw std::runtime_error("expected ) in " + lx.s);
        return v;
    }
    if (lx.pos < lx.s.size() && isdigit((unsigned char)lx.s[lx.pos])) {
        size_t end = lx.pos;
        while (end < lx.s.size() && isdigit((unsigned char)lx.s[end])) ++end;
        long v = std::stol(lx.s.substr(lx.pos, end - lx.pos));
        lx.pos = end;
        return v;
    }
    size_t end = lx.pos;
    while (end < lx.s.size() && (isalnum((unsigned char)lx.s[end]) || lx.s[end] == '_')) ++end;
    std::string id = lx.s.substr(lx.pos, end - lx.pos);
    if (id.empty()) throw std::runtime_error("parse error in " + lx.s);
    lx.pos = end;
    if (lx.peek('(')) {
        lx.eat("(");
        std::vector<long> args;
        if (!lx.peek(')')) {
            args.push_back(parse_expr(lx, b));
            while (lx.eat(",")) args.push_back(parse_expr(lx, b));
        }
        if (!lx.eat(")")) throw std::runtime_error("expected ) after args in " + lx.s);
        if (id == "if_odd" && args.size() == 3) return args[0] % 2 != 0 ? args[1] : args[2];
        if (id == "min" && args.size() == 2) return std::min(args[0], args[1]);
        if (id == "max" && args.size() == 2) return std::max(args[0], args[1]);
        if (id == "abs" && args.size() == 1) return std::abs(args[0]);
        if (id == "eq" && args.size() == 2) return args[0] == args[1] ? 1 : 0;
        throw std::runtime_error("unknown function " + id);
    }
    auto it = b.find(id);
    if (it == b.end()) throw std::runtime_error("unbound variable " + id + " in " + lx.s);
    return it->second;
}

long parse_term(Lexer& lx, const Bindings& b) {
    long v = parse_factor(lx, b);
    while (true) {
        if (lx.eat("*")) v *= parse_factor(lx, b);
        else if (lx.eat("/")) {
            long d = parse_factor(lx, b);
            if (d == 0 || v % d != 0) throw std::runtime_error("non-exact division in " + lx.s);
            v /= d;
        } else
            return v;
    }
}

long parse_expr(Lexer& lx, const Bindings& b) {
    long v = parse_term(lx, b);
    while (true) {
        if (lx.eat("+")) v += parse_term(lx, b);
        else if (lx.eat("-")) v -= parse_term(lx, b);
        else return v;
    }
}

bool parse_cmp(Lexer& lx, const Bindings& b) {
    if (lx.eat("even")) {
        if (!lx.eat("(")) throw std::runtime_error("even(");
        long v = parse_expr(lx, b);
        if (!lx.eat(")")) throw std::runtime_error("even)");
        return v % 2 == 0;
    }
    if (lx.eat("odd")) {
        if (!lx.eat("(")) throw std::runtime_error("odd(");
        long v = parse_expr(lx, b);
        if (!lx.eat(")")) throw std::runtime_error("odd)");
        return v % 2 != 0;
    }
    long a = parse_expr(lx, b);
    if (lx.eat("==")) return a == parse_expr(lx, b);
    if (lx.eat("!=")) return a != parse_expr(lx, b);
    if (lx.eat(">=")) return a >= parse_expr(lx, b);
    if (lx.eat("<=")) return a <= parse_expr(lx, b);
    if (lx.eat(">")) return a > parse_expr(lx, b);
    if (lx.eat("<")) return a < parse_expr(lx, b);
    throw std::runtime_error("expected comparison in " + lx.s);
}

bool parse_and(Lexer& lx, const Bindings& b) {
    bool v = parse_cmp(lx, b);
    while (lx.eat("&&")) {
        bool w = parse_cmp(lx, b);
        v = v && w;
    }
    return v;
}

bool parse_or(Lexer& lx, const Bindings& b) {
    bool v = parse_and(lx, b);
    while (lx.eat("||")) {
        bool w = parse_and(lx, b);
        v = v || w;
    }
    return v;
}

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(uint64_t v) {
    char buf[17];
    snprintf(buf, sizeof buf, "%016llx", (unsigned long long)v);
    return buf;
}

}  // namespace

long eval_int(const std::string& expr, const Bindings& b) {
    Lexer lx{expr};
    long v = parse_expr(lx, b);
    if (!lx.done()) throw std::runtime_error("trailing input in " + expr);
    return v;
}

bool eval_cond(const std::string& expr, const Bindings& b) {
    if (expr.empty()) return true;
    Lexer lx{expr};
    bool v = parse_or(lx, b);
    if (!lx.done()) throw std::runtime_error("trailing input in " + expr);
    return v;
}

// --- weight / eps expressions ---------------------------------------------------

namespace {

std::optional<Vec> eval_atom_sum(const std::string& expr, const RootDatumPtr& datum,
                                 const Bindings& b, bool lenient) {
    size_t dim = datum->ambient_dim();
    const auto& factors = datum->factors();
    auto factor_offset = [&](size_t f) { return factors.at(f).offset; };
    auto fw_of_factor = [&](size_t f, long i) -> std::optional<Vec> {
        long off = 0;
        for (size_t ff = 0; ff < f; ++ff)
            for (auto& a : datum->simple_roots())
                if ((size_t)datum->factor_of_root(a) == ff) ++off;
        long fr = 0;
        for (auto& a : datum->simple_roots())
            if ((size_t)datum->factor_of_root(a) == f) ++fr;
        if (i < 1 || i > fr) return std::nullopt;
        return datum->fundamental_weights()[(size_t)(off + i - 1)];
    };

    std::string body = expr;
    Rat overall(1);
    {
        size_t p = body.find_last_of('/');
        if (p != std::string::npos) {
            std::string tail = body.substr(p + 1);
            bool digits = !tail.empty();
            for (char c : tail)
                if (!isdigit((unsigned char)c) && !isspace((unsigned char)c)) digits = false;
            size_t q = p;
            while (q > 0 && isspace((unsigned char)body[q - 1])) --q;
            if (digits && q > 0 && body[q - 1] == ')') {
                overall = Rat(1, std::stol(tail));
                body = body.substr(0, q);
            }
        }
        size_t i = 0;
        while (i < body.size() && isspace((unsigned char)body[i])) ++i;
        if (i < body.size() && body[i] == '(') {
            int depth = 0;
            size_t close = std::string::npos;
            for (size_t j = i; j < body.size(); ++j) {
                if (body[j] == '(') ++depth;
                if (body[j] == ')') {
                    --depth;
                    if (depth == 0) { close = j; break; }
                }
            }
            bool only = close != std::string::npos;
            for (size_t j = close + 1; only && j < body.size(); ++j)
                if (!isspace((unsigned char)body[j])) only = false;
            if (only) body = body.substr(i + 1, close - i - 1);
        }
    }

    Vec out = zero_vec(dim);
    size_t pos = 0;
    int sign = 1;
    auto skipws = [&]() {
        while (pos < body.size() && isspace((unsigned char)body[pos])) ++pos;
    };
    while (true) {
        skipws();
        if (pos >= body.size()) break;
        if (body[pos] == '+') { sign = 1; ++pos; continue; }
        if (body[pos] == '-') { sign = -1; ++pos; continue; }
        Rat coeff(1);
        skipws();
        if (pos < body.size() && body[pos] == '[') {
            size_t close = body.find(']', pos);
            if (close == std::string::npos) throw std::runtime_error("unclosed [ in " + expr);
            std::string inner = body.substr(pos + 1, close - pos - 1);
            size_t comma = inner.find(',');
            long num = eval_int(comma == std::string::npos ? inner : inner.substr(0, comma), b);
            long den = comma == std::string::npos ? 1 : eval_int(inner.substr(comma + 1), b);
            coeff = rat(num, den);
            pos = close + 1;
            skipws();
            if (pos < body.size() && body[pos] == '*') ++pos;
            skipws();
        }
        size_t save = pos;
        if (pos < body.size() && isdigit((unsigned char)body[pos])) {
            size_t end = pos;
            while (end < body.size() && isdigit((unsigned char)body[end])) ++end;
            long num = std::stol(body.substr(pos, end - pos));
            size_t p2 = end;
            while (p2 < body.size() && isspace((unsigned char)body[p2])) ++p2;
            long den = 1;
            if (p2 < body.size() && body[p2] == '/') {
                size_t p3 = p2 + 1;
                while (p3 < body.size() && isspace((unsigned char)body[p3])) ++p3;
                size_t e2 = p3;
                while (e2 < body.size() && isdigit((unsigned char)body[e2])) ++e2;
                if (e2 > p3) {
                    den = std::stol(body.substr(p3, e2 - p3));
                    p2 = e2;
                }
            }
            while (p2 < body.size() && isspace((unsigned char)body[p2])) ++p2;
            if (p2 < body.size() && body[p2] == '*') {
                coeff = rat(num, den);
                pos = p2 + 1;
            } else {
                pos = save;
            }
        }
        skipws();
        size_t end = pos;
        while (end < body.size() && (isalnum((unsigned char)body[end]) || body[end] == '_')) ++end;
        std::string id = body.substr(pos, end - pos);
        pos = end;
        Vec atom;
        if (id == "ee") {
            size_t f = SIZE_MAX;
            for (size_t ff = 0; ff < factors.size(); ++ff)
                if (factors[ff].series == Series::E6) f = ff;
            if (f == SIZE_MAX) throw std::runtime_error("ee outside E6");
            atom = zero_vec(dim);
            atom[factor_offset(f) + 6] = 1;
        } else if (!id.empty()) {
            skipws();
            if (!(pos < body.size() && body[pos] == '('))
                throw std::runtime_error("expected ( after " + id + " in " + expr);
            int depth = 0;
            size_t close = pos;
            for (; close < body.size(); ++close) {
                if (body[close] == '(') ++depth;
                if (body[close] == ')') {
                    --depth;
                    if (depth == 0) break;
                }
            }
            std::string arg = body.substr(pos + 1, close - pos - 1);
            pos = close + 1;
            long idx = eval_int(arg, b);
            if (id == "e" || id == "e2") {
                size_t f = id == "e" ? 0 : 1;
                if (f >= factors.size()) throw std::runtime_error("no second factor");
                long fdim = (long)factors[f].dim;
                if (f == 0 && factors[f].series == Series::E6) fdim = 6;
                if (idx < 1 || idx > fdim) {
                    if (lenient) return std::nullopt;
                    throw std::runtime_error("eps index out of range in " + expr);
                }
                atom = zero_vec(dim);
                atom[factor_offset(f) + (size_t)idx - 1] = 1;
            } else if (id == "pi" || id == "pi2" || id == "dpi") {
                size_t f = id == "pi2" ? 1 : 0;
                auto w = fw_of_factor(f, idx);
                if (!w) {
                    if (lenient) return std::nullopt;
                    throw std::runtime_error("pi index out of range in " + expr);
                }
                atom = *w;
                if (id == "dpi") atom = repkit::dominant_representative(datum, Rat(-1) * atom);
            } else {
                throw std::runtime_error("unknown atom '" + id + "' in " + expr);
            }
        } else {
            throw std::runtime_error("parse error in eps expr: " + expr);
        }
        out += (Rat(sign) * coeff) * atom;
        sign = 1;
    }
    return datum->canonicalize(overall * out);
}

}  // namespace

Vec eval_eps(const std::string& expr, const RootDatumPtr& datum, const Bindings& b) {
    auto v = eval_atom_sum(expr, datum, b, false);
    if (!v) throw std::runtime_error("eps eval failed: " + expr);
    return *v;
}

std::vector<Vec> eval_weight_list(const std::string& list, const RootDatumPtr& datum,
                                  const Bindings& b) {
    std::vector<Vec> out;
    std::istringstream is(list);
    std::string item;
    while (std::getline(is, item, ';')) {
        while (!item.empty() && isspace((unsigned char)item.front())) item.erase(item.begin());
        while (!item.empty() && isspace((unsigned char)item.back())) item.pop_back();
        if (item.empty()) continue;
        // EXPR (for VAR=a..b)* (if COND)?
        std::string cond;
        size_t ip = item.find(" if ");
        if (ip != std::string::npos) {
            cond = item.substr(ip + 4);
            item = item.substr(0, ip);
        }
        std::vector<std::tuple<std::string, std::string, std::string>> loops;  // var, lo, hi
        while (true) {
            size_t fp = item.rfind(" for ");
            if (fp == std::string::npos) break;
            std::string rng = item.substr(fp + 5);
            item = item.substr(0, fp);
            size_t eq = rng.find('=');
            std::string var = rng.substr(0, eq);
            while (!var.empty() && isspace((unsigned char)var.back())) var.pop_back();
            while (!var.empty() && isspace((unsigned char)var.front())) var.erase(var.begin());
            std::string range = rng.substr(eq + 1);
            size_t dots = range.find("..");
            loops.push_back({var, range.substr(0, dots), range.substr(dots + 2)});
        }
        std::reverse(loops.begin(), loops.end());
        std::function<void(size_t, Bindings&)> rec = [&](size_t li, Bindings& bb) {
            if (li == loops.size()) {
                if (!cond.empty() && !eval_cond(cond, bb)) return;
                auto v = eval_atom_sum(item, datum, bb, true);
                if (v && !is_zero(*v)) out.push_back(*v);
                return;
            }
            auto& [var, lo_e, hi_e] = loops[li];
            long lo = eval_int(lo_e, bb), hi = eval_int(hi_e, bb);
            for (long i = lo; i <= hi; ++i) {
                bb[var] = i;
                rec(li + 1, bb);
            }
            bb.erase(var);
        };
        Bindings bb = b;
        rec(0, bb);
    }
    return out;
}

// --- file parsing ---------------------------------------------------------------

const std::string& Row::field(const std::string& k) const {
    auto it = fields.find(k);
    if (it == fields.end())
        throw std::runtime_error("row " + std::to_string(id) + ": missing field " + k);
    return it->second;
}

const TableFile& TableStore::file(const std::string& name) const {
    auto it = files.find(name);
    if (it == files.end()) throw std::runtime_error("no table " + name);
    return it->second;
}

const Row& TableStore::row(const std::string& table, int id) const {
    for (auto& r : file(table).rows)
        if (r.id == id) return r;
    throw std::runtime_error(table + ": no row " + std::to_string(id));
}

std::vector<const Row*> TableStore::rows_of(const std::string& table, int id) const {
    std::vector<const Row*> out;
    for (auto& r : file(table).rows)
        if (r.id == id) out.push_back(&r);
    return out;
}

std::string data_directory() {
    if (const char* env = std::getenv("WEYLKIT_DATA")) return env;
#ifdef WEYLKIT_DATA_DIR
    return WEYLKIT_DATA_DIR;
#else
    return "data";
#endif
}

namespace {

TableFile parse_table_file(const std::string& name, const std::string& text) {
    TableFile f;
    f.name = name;
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error(name + ": empty");
    {
        std::istringstream hs(line);
        std::string magic, ver, nm;
        hs >> magic >> ver >> nm;
        if (magic != "weylkit-table" || nm != name)
            throw std::runtime_error(name + ": bad header: " + line);
        f.version = ver;
    }
    if (!std::getline(is, line) || line.rfind("checksum fnv1a64:", 0) != 0)
        throw std::runtime_error(name + ": missing checksum line");
    std::string claimed = line.substr(std::string("checksum fnv1a64:").size());
    std::string body((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    if (hex64(fnv1a(body)) != claimed) throw std::runtime_error(name + ": checksum mismatch");
    std::istringstream bs(body);
    while (std::getline(bs, line)) {
        f.raw_lines.push_back(line);
        std::string t = line;
        while (!t.empty() && isspace((unsigned char)t.front())) t.erase(t.begin());
        if (t.empty() || t[0] == '#') continue;
        if (t.rfind("row ", 0) != 0) throw std::runtime_error(name + ": bad line: " + line);
        Row r;
        std::istringstream ls(t.substr(4));
        ls >> r.id;
        std::string rest;
        std::getline(ls, rest);
        std::istringstream fs(rest);
        std::string field;
        while (std::getline(fs, field, '|')) {
            size_t eq = field.find('=');
            if (eq == std::string::npos) continue;
            std::string k = field.substr(0, eq), v = field.substr(eq + 1);
            auto trim = [](std::string& s) {
                while (!s.empty() && isspace((unsigned char)s.front())) s.erase(s.begin());
                while (!s.empty() && isspace((unsigned char)s.back())) s.pop_back();
            };
            trim(k);
            trim(v);
            if (k == "variant") r.variant = v;
            else r.fields[k] = v;
        }
        f.rows.push_back(r);
    }
    return f;
}

}  // namespace

std::string serialize(const TableFile& f) {
    std::ostringstream body;
    for (auto& l : f.raw_lines) body << l << "\n";
    std::string b = body.str();
    std::ostringstream os;
    os << "weylkit-table " << f.version << " " << f.name << "\n";
    os << "checksum fnv1a64:" << hex64(fnv1a(b)) << "\n";
    os << b;
    return os.str();
}

TableStore load(const std::string& dir_in) {
    TableStore st;
    st.dir = dir_in.empty() ? data_directory() : dir_in;
    const char* names[] = {"table1", "table2", "table3", "table4", "table5",
                           "table6", "table7", "table8", "table9", "aux534",
                           "aux539", "aux5310", "embeddings", "rank1"};
    for (auto n : names) {
        std::ifstream in(st.dir + "/" + std::string(n) + ".dat");
        if (!in) throw std::runtime_error("cannot open " + st.dir + "/" + n + ".dat");
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        st.files[n] = parse_table_file(n, text);
    }
    return st;
}

// --- instantiation ----------------------------------------------------------------

namespace {

std::optional<Bindings> match_g_pattern(const std::string& pat, const RootDatumPtr& d) {
    Bindings b;
    const auto& f = d->factors();
    if (pat == "hxh") {
        if (f.size() % 2 || f.empty()) return std::nullopt;
        size_t half = f.size() / 2;
        for (size_t i = 0; i < half; ++i)
            if (f[i].series != f[i + half].series || f[i].rank != f[i + half].rank)
                return std::nullopt;
        long rk = 0;
        for (size_t i = 0; i < half; ++i) rk += f[i].rank;
        b["rk"] = rk;
        return b;
    }
    if (pat == "sp(2*n)xsp(2*m)") {
        if (f.size() != 2 || f[0].series != Series::C || f[1].series != Series::C)
            return std::nullopt;
        b["n"] = f[0].rank;
        b["m"] = f[1].rank;
        return b;
    }
    if (pat == "sp(2*n)xsl2") {
        if (f.size() != 2 || f[0].series != Series::C ||
            !(f[1].series == Series::A && f[1].rank == 1))
            return std::nullopt;
        b["n"] = f[0].rank;
        b["m"] = 1;
        return b;
    }
    if (f.size() != 1) return std::nullopt;
    auto s = f[0].series;
    long r = f[0].rank;
    if (pat == "G2") return s == Series::G2 ? std::optional<Bindings>(b) : std::nullopt;
    if (pat == "F4") return s == Series::F4 ? std::optional<Bindings>(b) : std::nullopt;
    if (pat == "E6") return s == Series::E6 ? std::optional<Bindings>(b) : std::nullopt;
    if (pat == "E7") return s == Series::E7 ? std::optional<Bindings>(b) : std::nullopt;
    if (pat == "E8") return s == Series::E8 ? std::optional<Bindings>(b) : std::nullopt;
    auto try_solved = [&](const std::string& inner, long total) -> std::optional<Bindings> {
        for (long n = 1; n <= total + 2; ++n) {
            Bindings bb;
            bb["n"] = n;
            try {
                if (eval_int(inner, bb) == total) {
                    b["n"] = n;
                    return b;
                }
            } catch (...) {
                return std::nullopt;
            }
        }
        return std::nullopt;
    };
    if (pat.rfind("sl(", 0) == 0 && pat.back() == ')') {
        if (s != Series::A) return std::nullopt;
        return try_solved(pat.substr(3, pat.size() - 4), r + 1);
    }
    if (pat.rfind("sp(", 0) == 0 && pat.back() == ')') {
        if (s != Series::C) return std::nullopt;
        return try_solved(pat.substr(3, pat.size() - 4), 2 * r);
    }
    if (pat.rfind("so(", 0) == 0 && pat.back() == ')') {
        long total = s == Series::B ? 2 * r + 1 : (s == Series::D ? 2 * r : -1);
        if (total < 0) return std::nullopt;
        return try_solved(pat.substr(3, pat.size() - 4), total);
    }
    return std::nullopt;
}

std::string resolve_h_spec(const std::string& spec, const Bindings& b) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) return spec;
    std::string head = spec.substr(0, colon), arg = spec.substr(colon + 1);
    return head + ":" + std::to_string(eval_int(arg, b));
}

std::vector<std::string> param_names(const Row& r) {
    std::vector<std::string> names;
    if (!r.has("params")) return names;
    std::istringstream is(r.field("params"));
    std::string p;
    while (std::getline(is, p, ',')) {
        while (!p.empty() && isspace((unsigned char)p.front())) p.erase(p.begin());
        while (!p.empty() && isspace((unsigned char)p.back())) p.pop_back();
        if (!p.empty()) names.push_back(p);
    }
    return names;
}

template <typename F>
void enumerate_params(const Row& r, Bindings base, long bound, F&& visit) {
    auto names = param_names(r);
    std::string cond = r.has("cond") ? r.field("cond") : "";
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == names.size()) {
            try {
                if (eval_cond(cond, base)) visit(base);
            } catch (const std::exception&) {
            }
            return;
        }
        for (long v = 0; v <= bound; ++v) {
            base[names[i]] = v;
            rec(i + 1);
        }
        base.erase(names[i]);
    };
    rec(0);
}

}  // namespace

Subalgebra instantiate_h(const AlgebraPtr& g, const std::string& h_spec, const Bindings& b) {
    std::vector<std::string> parts;
    {
        std::istringstream is(h_spec);
        std::string p;
        while (std::getline(is, p, '&')) parts.push_back(p);
    }
    Subalgebra acc;
    bool first = true;
    for (auto& p : parts) {
        std::string spec = p;
        while (!spec.empty() && isspace((unsigned char)spec.front())) spec.erase(spec.begin());
        while (!spec.empty() && isspace((unsigned char)spec.back())) spec.pop_back();
        bool saturate = false;
        if (spec.rfind("zc+", 0) == 0) {
            saturate = true;
            spec = spec.substr(3);
        }
        size_t factor = 0;
        if (spec.rfind("f2.", 0) == 0) {
            factor = 1;
            spec = spec.substr(3);
        }
        std::string resolved = spec;
        if (spec.rfind("srs:", 0) != 0)  // srs keeps its comma list verbatim
            resolved = resolve_h_spec(spec, b);
        Subalgebra s = catalog::by_name(g, resolved, factor);
        if (saturate) {
            // h + z(z_g(h))
            Subalgebra zz = liealg::center_of(liealg::centralizer(s));
            s = liealg::bracket_closure(liealg::sum(s, zz));
        }
        if (first) {
            acc = s;
            first = false;
        } else
            acc = liealg::sum(acc, s);
    }
    acc.set_tag(h_spec);
    return acc;
}

std::vector<EssentialPair> essential_rows_for(const TableStore& store, const RootDatumPtr& g) {
    std::vector<EssentialPair> out;
    for (const char* tn : {"table1", "table2"}) {
        for (auto& r : store.file(tn).rows) {
            auto b0 = match_g_pattern(r.field("g"), g);
            if (!b0) continue;
            long nbound = 2;
            for (auto& f : g->factors()) nbound = std::max<long>(nbound, 2 * f.rank + 4);
            enumerate_params(r, *b0, nbound, [&](const Bindings& b) {
                EssentialPair p;
                p.row = r.id;
                p.table = tn;
                p.g_name = g->name();
                p.h_spec = r.field("h");
                p.bind = b;
                if (r.has("a")) p.a_gens = eval_weight_list(r.field("a"), g, b);
                if (r.has("a_constrained")) {
                    std::vector<Vec> gens;
                    std::vector<Rat> coeffs;
                    std::istringstream is(r.field("a_constrained"));
                    std::string item;
                    while (std::getline(is, item, ';')) {
                        size_t at = item.find('@');
                        if (at == std::string::npos) continue;
                        std::string wexpr = item.substr(0, at);
                        std::string cexpr = item.substr(at + 1);
                        std::string var;
                        long lo = 0, hi = -1;
                        size_t fp = wexpr.find(" for ");
                        if (fp != std::string::npos) {
                            std::string rng = wexpr.substr(fp + 5);
                            wexpr = wexpr.substr(0, fp);
                            size_t eq = rng.find('=');
                            var = rng.substr(0, eq);
                            while (!var.empty() && isspace((unsigned char)var.back()))
                                var.pop_back();
                            while (!var.empty() && isspace((unsigned char)var.front()))
                                var.erase(var.begin());
                            size_t dots = rng.find("..");
                            lo = eval_int(rng.substr(eq + 1, dots - eq - 1), b);
                            hi = eval_int(rng.substr(dots + 2), b);
                        }
                        auto add_one = [&](const Bindings& bb) {
                            auto v = eval_atom_sum(wexpr, g, bb, true);
                            if (v && !is_zero(*v)) {
                                gens.push_back(*v);
                                coeffs.push_back(Rat(eval_int(cexpr, bb)));
                            }
                        };
                        if (var.empty()) add_one(b);
                        else
                            for (long i = lo; i <= hi; ++i) {
                                Bindings b2 = b;
                                b2[var] = i;
                                add_one(b2);
                            }
                    }
                    if (!gens.empty()) {
                        Mat row(1, gens.size());
                        for (size_t i = 0; i < gens.size(); ++i) row(0, i) = coeffs[i];
                        Subspace sol = kernel(row);
                        for (auto& c : sol.basis_vectors()) {
                            Vec w = zero_vec(g->ambient_dim());
                            for (size_t i = 0; i < gens.size(); ++i) w += c[i] * gens[i];
                            p.a_gens.push_back(primitive_integer(w));
                        }
                    }
                }
                if (r.has("adim")) p.a_dim = (size_t)eval_int(r.field("adim"), b);
                out.push_back(std::move(p));
            });
        }
    }
    return out;
}

std::optional<EssentialPair> lookup_essential(const TableStore& store, const AlgebraPtr& g,
                                              const Subalgebra& h) {
    auto rows = essential_rows_for(store, g->datum());
    for (auto& p : rows) {
        Subalgebra cand;
        try {
            cand = instantiate_h(g, p.h_spec, p.bind);
        } catch (const std::exception&) {
            continue;
        }
        if (cand.space() == h.space()) return p;
    }
    auto fp = liealg::fingerprint(h);
    for (auto& p : rows) {
        Subalgebra cand;
        try {
            cand = instantiate_h(g, p.h_spec, p.bind);
        } catch (const std::exception&) {
            continue;
        }
        if (cand.dim() != h.dim()) continue;
        if (liealg::fingerprint(cand) == fp) return p;
    }
    return std::nullopt;
}

std::vector<EssentialTriple> table4_rows_for(const TableStore& store, const RootDatumPtr& g) {
    std::vector<EssentialTriple> out;
    for (auto& r : store.file("table4").rows) {
        auto b0 = match_g_pattern(r.field("g"), g);
        if (!b0) continue;
        long nbound = 2;
        for (auto& f : g->factors()) nbound = std::max<long>(nbound, 2 * f.rank + 4);
        enumerate_params(r, *b0, nbound, [&](const Bindings& b) {
            EssentialTriple t;
            t.row = r.id;
            t.g_name = g->name();
            t.h_spec = r.field("h");
            t.bind = b;
            t.variant = r.variant;
            std::string gens = r.has("gens")
                                   ? r.field("gens")
                                   : store.row("table4", (int)eval_int(r.field("gens_ref"), b))
                                         .field("gens");
            t.generators = eval_weight_list(gens, g, b);
            out.push_back(std::move(t));
        });
    }
    return out;
}

std::vector<Vec> instantiate_module_weights(const std::string& v_expr, const Embedded& eh,
                                            const Bindings& b) {
    std::vector<Vec> out;
    const auto& d = eh.inner->datum();
    auto fw = [&](size_t f, long i) {
        long off = 0;
        for (size_t ff = 0; ff < f; ++ff)
            for (auto& a : d->simple_roots())
                if ((size_t)d->factor_of_root(a) == ff) ++off;
        return d->fundamental_weights()[(size_t)(off + i - 1)];
    };
    auto rank_of = [&](size_t f) {
        long r = 0;
        for (auto& a : d->simple_roots())
            if ((size_t)d->factor_of_root(a) == f) ++r;
        return r;
    };
    std::istringstream is(v_expr);
    std::string item;
    while (std::getline(is, item, '+')) {
        while (!item.empty() && isspace((unsigned char)item.front())) item.erase(item.begin());
        while (!item.empty() && isspace((unsigned char)item.back())) item.pop_back();
        if (item.empty() || item == "0") continue;
        long count = 1;
        // count prefix: the '*' at parenthesis depth 0, e.g. "(2*k-n)*tau"
        {
            int depth = 0;
            size_t star = std::string::npos;
            for (size_t i = 0; i < item.size(); ++i) {
                if (item[i] == '(') ++depth;
                else if (item[i] == ')') --depth;
                else if (item[i] == '*' && depth == 0) { star = i; break; }
            }
            if (star != std::string::npos) {
                count = eval_int(item.substr(0, star), b);
                item = item.substr(star + 1);
            }
        }
        if (count == 0) continue;
        if (count < 0) throw std::runtime_error("negative module multiplicity");
        Vec lam;
        if (item == "tau_big") {
            // tautological module of the factor of maximal rank
            size_t best = 0;
            long bestrk = -1;
            for (size_t f = 0; f < d->factors().size(); ++f)
                if ((long)d->factors()[f].rank > bestrk) {
                    bestrk = d->factors()[f].rank;
                    best = f;
                }
            lam = fw(best, 1);
        } else if (item == "tau" || item == "tau1") lam = fw(0, 1);
        else if (item == "tau2") lam = fw(1, 1);
        else if (item == "dtau")
            lam = repkit::dominant_representative(d, Rat(-1) * fw(0, 1));
        else if (item == "wedge2(tau)")
            lam = fw(0, 2);
        else if (item == "wedge2(dtau)")
            lam = repkit::dominant_representative(d, Rat(-1) * fw(0, 2));
        else if (item.rfind("R(", 0) == 0 && item.back() == ')') {
            long i = eval_int(item.substr(2, item.size() - 3), b);
            if (i < 1 || i > rank_of(0)) throw std::runtime_error("R(i) out of range");
            lam = fw(0, i);
        } else
            throw std::runtime_error("unknown module term: " + item);
        for (long c = 0; c < count; ++c) out.push_back(d->canonicalize(lam));
    }
    return out;
}

std::vector<std::vector<Vec>> table3_families(const TableStore& store, const RootDatumPtr& g) {
    std::vector<std::vector<Vec>> out;
    if (g->factors().size() != 1) throw std::runtime_error("table3: simple g only");
    auto s = g->factors()[0].series;
    long n = g->factors()[0].rank;
    size_t dim = g->ambient_dim();
    auto eps = [&](long i) {
        Vec v = zero_vec(dim);
        v[(size_t)i - 1] = 1;
        return g->canonicalize(v);
    };
    auto add_if_root = [&](std::vector<Vec>& set, const Vec& v) {
        if (g->is_root(v)) set.push_back(g->canonicalize(v));
    };
    auto canon = [&](std::vector<Vec> v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return v;
    };
    std::set<std::vector<Vec>> seen;
    auto emit = [&](std::vector<Vec> set) {
        auto c = canon(std::move(set));
        if (!seen.count(c)) {
            seen.insert(c);
            out.push_back(c);
        }
    };
    long universe = (s == Series::A) ? n + 1 : n;
    // the parameterization covers proper subgroups; the full group is large
    // and carries the full root set
    {
        std::vector<Vec> full;
        for (auto& r : g->roots()) full.push_back(r);
        emit(std::move(full));
    }
    for (auto& r : store.file("table3").rows) {
        if (rootsys::series_parse(r.field("series")) != s) continue;
        if (!eval_cond(r.has("cond") ? r.field("cond") : "", {{"n", n}})) continue;
        std::string fam = r.field("family");
        for (long mask = 0; mask < (1L << universe); ++mask) {
            std::vector<bool> inI((size_t)universe + 1, false);
            long sz = 0;
            for (long i = 0; i < universe; ++i)
                if (mask & (1L << i)) {
                    inI[(size_t)i + 1] = true;
                    ++sz;
                }
            bool proper = sz < universe, nonempty = sz > 0;
            std::vector<Vec> set;
            auto same = [&](long i, long j) { return inI[(size_t)i] == inI[(size_t)j]; };
            auto add_sym_pairs = [&](bool with_sum) {
                for (long i = 1; i <= universe; ++i)
                    for (long j = 1; j <= universe; ++j) {
                        if (i == j) continue;
                        if (same(i, j)) {
                            add_if_root(set, eps(i) - eps(j));
                            if (with_sum) {
                                add_if_root(set, eps(i) + eps(j));
                                add_if_root(set, Rat(-1) * (eps(i) + eps(j)));
                            }
                        }
                    }
            };
            if (fam == "Aset") {
                if (!(proper && nonempty)) continue;
                add_sym_pairs(false);
            } else if (fam == "BCa") {
                if (!proper) continue;
                add_sym_pairs(true);
                for (long i = 1; i <= n; ++i)
                    if (inI[(size_t)i]) {
                        add_if_root(set, eps(i));
                        add_if_root(set, Rat(-1) * eps(i));
                        add_if_root(set, Rat(2) * eps(i));
                        add_if_root(set, Rat(-2) * eps(i));
                    }
            } else if (fam == "BCb") {
                if (!(proper && nonempty)) continue;
                add_sym_pairs(true);
                for (long i = 1; i <= n; ++i) {
                    add_if_root(set, eps(i));
                    add_if_root(set, Rat(-1) * eps(i));
                    add_if_root(set, Rat(2) * eps(i));
                    add_if_root(set, Rat(-2) * eps(i));
                }
            } else if (fam == "BCc" || fam == "Db") {
                for (long i = 1; i <= n; ++i)
                    for (long j = 1; j <= n; ++j) {
                        if (i == j) continue;
                        if (same(i, j)) add_if_root(set, eps(i) - eps(j));
                        if (inI[(size_t)i] && !inI[(size_t)j]) {
                            add_if_root(set, eps(i) + eps(j));
                            add_if_root(set, Rat(-1) * (eps(i) + eps(j)));
                        }
                    }
            } else if (fam == "Da") {
                if (!(proper && nonempty)) continue;
                add_sym_pairs(true);
            } else {
                throw std::runtime_error("unknown table3 family: " + fam);
            }
            emit(std::move(set));
        }
    }
    return out;
}

Rat table7_k(const TableStore& store, Series s, int rank) {
    for (auto& r : store.file("table7").rows) {
        if (rootsys::series_parse(r.field("series")) != s) continue;
        return Rat(eval_int(r.field("k"), {{"l", rank}}));
    }
    throw std::runtime_error("table7: no entry");
}

UnderlineRow underline_row(const TableStore& store, int row, const RootDatumPtr& g,
                           const Bindings& b) {
    UnderlineRow u;
    u.row = row;
    const Row& r8 = store.row("table8", row);
    u.ng_type = r8.field("ng");
    u.nh_type = r8.field("nh");
    if (r8.has("roots")) u.simple_roots = eval_weight_list(r8.field("roots"), g, b);
    const Row& r9 = store.row("table9", row);
    u.gamma_spec = r9.field("gamma");
    if (r9.has("gens")) u.gamma_gen_roots = eval_weight_list(r9.field("gens"), g, b);
    return u;
}

std::optional<EmbeddingRow> embedding_row(const TableStore& store, const std::string& table,
                                          int row) {
    for (auto& r : store.file("embeddings").rows) {
        if (r.id != row || r.field("table") != table) continue;
        EmbeddingRow e;
        e.row = row;
        e.table = table;
        e.h_spec = r.field("h");
        e.dim_ng = r.field("dimng");
        e.dim_nh = r.field("dimnh");
        e.l0_derived = r.has("l0derived");
        return e;
    }
    return std::nullopt;
}

// --- validation -------------------------------------------------------------------

ValidationReport load_and_validate(TableStore& store, bool deep) {
    ValidationReport rep;
    auto issue = [&](const std::string& t, int row, const std::string& m) {
        rep.issues.push_back({t, row, m});
    };
    auto pass = [&](const std::string& m) { rep.passed.push_back(m); };

    struct Expect {
        const char* name;
        size_t distinct_rows;
    } expects[] = {{"table1", 27}, {"table2", 5},  {"table4", 33}, {"table5", 22},
                   {"table6", 9},  {"table7", 9},  {"table8", 27}, {"table9", 27},
                   {"aux539", 19}, {"aux5310", 12}};
    for (auto& e : expects) {
        std::set<int> ids;
        for (auto& r : store.file(e.name).rows) ids.insert(r.id);
        if (ids.size() != e.distinct_rows)
            issue(e.name, 0,
                  "row count " + std::to_string(ids.size()) + " != " +
                      std::to_string(e.distinct_rows));
        else
            pass(std::string(e.name) + " row count");
    }
    if (!deep) return rep;

    for (const char* tn : {"table1", "table2"}) {
        for (auto& r : store.file(tn).rows) {
            if (!r.has("minimal_g")) continue;
            try {
                auto d = catalog::datum_by_name(r.field("minimal_g"));
                auto rows = essential_rows_for(store, d);
                bool found = false;
                for (auto& p : rows) {
                    if (p.row != r.id || p.table != tn) continue;
                    found = true;
                    Subspace span = Subspace::span(d->ambient_dim(), p.a_gens);
                    if (p.a_dim && span.dim() != *p.a_dim) {
                        issue(tn, r.id,
                              "a-span dim " + std::to_string(span.dim()) + " != expected " +
                                  std::to_string(*p.a_dim));
                        break;
                    }
                    Subspace fwspan =
                        Subspace::span(d->ambient_dim(), d->fundamental_weights());
                    for (auto& v : p.a_gens)
                        if (!fwspan.contains(v))
                            issue(tn, r.id, "a-generator outside weight span");
                    break;
                }
                if (!found) issue(tn, r.id, "minimal instantiation not matched");
            } catch (const std::exception& e) {
                issue(tn, r.id, std::string("instantiation failed: ") + e.what());
            }
        }
        pass(std::string(tn) + " instantiation sweep");
    }

    for (auto& r : store.file("table4").rows) {
        if (!r.has("minimal_g")) continue;
        try {
            auto d = catalog::datum_by_name(r.field("minimal_g"));
            auto triples = table4_rows_for(store, d);
            bool found = false;
            for (auto& t : triples) {
                if (t.row != r.id) continue;
                found = true;
                for (auto& gen : t.generators)
                    if (!d->is_root(gen))
                        issue("table4", r.id, "generator not a root: " + vec_str(gen));
            }
            if (!found) issue("table4", r.id, "no instantiation at minimal_g");
        } catch (const std::exception& e) {
            issue("table4", r.id, std::string("check failed: ") + e.what());
        }
    }
    pass("table4 generators are roots");

    for (auto& r : store.file("table5").rows) {
        int src = (int)std::stol(r.field("src"));
        if (store.rows_of("table4", src).empty())
            issue("table5", r.id, "src row missing in table4");
    }
    pass("table5 source references");

    for (auto& r : store.file("table1").rows) {
        if (!r.has("classes")) continue;
        if (r.field("classes") == "aut") continue;
        try {
            long c = eval_int(r.field("classes"), {{"n", 8}});
            if (c <= 0) issue("table1", r.id, "nonpositive class count");
        } catch (const std::exception&) {
            issue("table1", r.id, "bad classes field");
        }
    }
    pass("conjugacy multiplicities positive");
    return rep;
}

}  // namespace weylkit::tables
