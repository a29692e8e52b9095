#include "mapspace/dsl.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "mapspace/errors.hpp"

namespace mapspace {

namespace {

enum class Tok { Ident, Int, LBrace, RBrace, Colon, Semi, Eq, Star, Plus, Caret, Slash, Minus, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    long value = 0;
    int line = 1, col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : s_(text) { advance(); }

    const Token& peek() const { return cur_; }
    Token take()
    {
        Token t = cur_;
        advance();
        return t;
    }

private:
    void advance()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) bump();
        cur_ = Token{};
        cur_.line = line_;
        cur_.col = col_;
        if (pos_ >= s_.size()) {
            cur_.kind = Tok::End;
            cur_.text = "<end of input>";
            return;
        }
        char c = s_[pos_];
        auto single = [&](Tok k) {
            cur_.kind = k;
            cur_.text = std::string(1, c);
            bump();
        };
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string id;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
                id += s_[pos_];
                bump();
            }
            cur_.kind = Tok::Ident;
            cur_.text = id;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            long v = 0;
            std::string txt;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                v = v * 10 + (s_[pos_] - '0');
                txt += s_[pos_];
                bump();
            }
            cur_.kind = Tok::Int;
            cur_.value = v;
            cur_.text = txt;
        } else {
            switch (c) {
            case '{': single(Tok::LBrace); break;
            case '}': single(Tok::RBrace); break;
            case ':': single(Tok::Colon); break;
            case ';': single(Tok::Semi); break;
            case '=': single(Tok::Eq); break;
            case '*': single(Tok::Star); break;
            case '+': single(Tok::Plus); break;
            case '^': single(Tok::Caret); break;
            case '/': single(Tok::Slash); break;
            case '-': single(Tok::Minus); break;
            default:
                throw SyntaxError(line_, col_, std::string("unexpected character '") + c + "'");
            }
        }
    }

    void bump()
    {
        if (s_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    const std::string& s_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token cur_;
};

struct RawTerm {
    Rational coeff = 1;
    std::vector<std::pair<std::string, int>> factors;  // (ident, exponent)
    int line = 1, col = 1;
};

struct RawItem {
    enum Kind { Gen, Diff, Mul, Unit } kind = Gen;
    std::string a, b;  // idents
    long degree = 0;
    std::vector<RawTerm> poly;
    int line = 1, col = 1;
};

struct RawFile {
    bool is_cdga = true;
    std::string name;
    std::vector<RawItem> items;
};

class Parser {
public:
    explicit Parser(const std::string& text) : lx_(text) {}

    RawFile file()
    {
        RawFile f;
        Token kind = expect(Tok::Ident, "'cdga' or 'algebra'");
        if (kind.text == "cdga") f.is_cdga = true;
        else if (kind.text == "algebra") f.is_cdga = false;
        else throw SyntaxError(kind.line, kind.col, "expected 'cdga' or 'algebra', found '" + kind.text + "'");
        f.name = expect(Tok::Ident, "model name").text;
        expect(Tok::LBrace, "'{'");
        while (lx_.peek().kind != Tok::RBrace) f.items.push_back(item());
        expect(Tok::RBrace, "'}'");
        if (lx_.peek().kind != Tok::End)
            throw SyntaxError(lx_.peek().line, lx_.peek().col, "trailing input after '}'");
        return f;
    }

private:
    RawItem item()
    {
        Token kw = expect(Tok::Ident, "'gen', 'd', 'mul' or 'unit'");
        RawItem it;
        it.line = kw.line;
        it.col = kw.col;
        if (kw.text == "gen") {
            it.kind = RawItem::Gen;
            it.a = expect(Tok::Ident, "generator name").text;
            expect(Tok::Colon, "':'");
            it.degree = expect(Tok::Int, "degree").value;
        } else if (kw.text == "d") {
            it.kind = RawItem::Diff;
            it.a = expect(Tok::Ident, "generator name").text;
            expect(Tok::Eq, "'='");
            it.poly = poly();
        } else if (kw.text == "mul") {
            it.kind = RawItem::Mul;
            it.a = expect(Tok::Ident, "left factor").text;
            expect(Tok::Star, "'*'");
            it.b = expect(Tok::Ident, "right factor").text;
            expect(Tok::Eq, "'='");
            it.poly = poly();
        } else if (kw.text == "unit") {
            it.kind = RawItem::Unit;
            it.a = expect(Tok::Ident, "unit name").text;
        } else {
            throw SyntaxError(kw.line, kw.col,
                              "expected 'gen', 'd', 'mul' or 'unit', found '" + kw.text + "'");
        }
        expect(Tok::Semi, "';'");
        return it;
    }

    std::vector<RawTerm> poly()
    {
        // poly ::= "0" | term ("+" term)*
        if (lx_.peek().kind == Tok::Int && lx_.peek().value == 0) {
            Token zero = lx_.take();
            if (lx_.peek().kind == Tok::Semi) return {};
            throw SyntaxError(zero.line, zero.col, "a zero polynomial is written as exactly '0'");
        }
        std::vector<RawTerm> terms;
        terms.push_back(term());
        while (lx_.peek().kind == Tok::Plus) {
            lx_.take();
            terms.push_back(term());
        }
        return terms;
    }

    RawTerm term()
    {
        RawTerm t;
        t.line = lx_.peek().line;
        t.col = lx_.peek().col;
        if (lx_.peek().kind == Tok::Minus || lx_.peek().kind == Tok::Int) {
            t.coeff = rat();
            expect(Tok::Star, "'*' after a coefficient");
        }
        t.factors.push_back(factor());
        while (lx_.peek().kind == Tok::Star) {
            lx_.take();
            t.factors.push_back(factor());
        }
        return t;
    }

    std::pair<std::string, int> factor()
    {
        Token id = expect(Tok::Ident, "generator name");
        int e = 1;
        if (lx_.peek().kind == Tok::Caret) {
            lx_.take();
            Token ev = expect(Tok::Int, "exponent");
            if (ev.value < 1) throw SyntaxError(ev.line, ev.col, "exponent must be >= 1");
            e = static_cast<int>(ev.value);
        }
        return {id.text, e};
    }

    Rational rat()
    {
        bool neg = false;
        if (lx_.peek().kind == Tok::Minus) {
            lx_.take();
            neg = true;
        }
        Token num = expect(Tok::Int, "numerator");
        long den = 1;
        if (lx_.peek().kind == Tok::Slash) {
            lx_.take();
            Token d = expect(Tok::Int, "denominator");
            if (d.value == 0) throw SyntaxError(d.line, d.col, "zero denominator");
            den = d.value;
        }
        return frac(neg ? -num.value : num.value, den);
    }

    Token expect(Tok k, const std::string& what)
    {
        if (lx_.peek().kind != k)
            throw SyntaxError(lx_.peek().line, lx_.peek().col,
                              "expected " + what + ", found '" + lx_.peek().text + "'");
        return lx_.take();
    }

    Lexer lx_;
};

ModelFile build_cdga(const RawFile& f)
{
    std::vector<GenSym> syms;
    std::map<std::string, int> ord;
    for (const RawItem& it : f.items) {
        if (it.kind == RawItem::Mul)
            throw SyntaxError(it.line, it.col, "'mul' lines belong to the algebra kind");
        if (it.kind == RawItem::Unit)
            throw SyntaxError(it.line, it.col, "'unit' lines belong to the algebra kind");
        if (it.kind != RawItem::Gen) continue;
        if (ord.count(it.a)) throw SyntaxError(it.line, it.col, "duplicate generator " + it.a);
        ord[it.a] = static_cast<int>(syms.size());
        syms.push_back(GenSym{it.a, static_cast<int>(it.degree)});
    }
    GenCtx ctx(syms);

    std::vector<Elem> diff(ctx.size(), Elem::zero());
    for (const RawItem& it : f.items) {
        if (it.kind != RawItem::Diff) continue;
        auto g = ord.find(it.a);
        if (g == ord.end()) throw SyntaxError(it.line, it.col, "unknown identifier " + it.a);
        Elem value;
        for (const RawTerm& t : it.poly) {
            std::vector<Monomial::Factor> fs;
            for (const auto& [name, e] : t.factors) {
                auto F = ord.find(name);
                if (F == ord.end()) throw SyntaxError(t.line, t.col, "unknown identifier " + name);
                fs.emplace_back(F->second, e);
            }
            std::sort(fs.begin(), fs.end());
            // merge repeated idents (x*x means x^2)
            std::vector<Monomial::Factor> merged;
            for (const auto& fct : fs) {
                if (!merged.empty() && merged.back().first == fct.first)
                    merged.back().second += fct.second;
                else
                    merged.push_back(fct);
            }
            value += Elem::term(ctx, Monomial::from_factors(ctx, merged), t.coeff);
        }
        if (!diff[static_cast<std::size_t>(g->second)].is_zero())
            throw SyntaxError(it.line, it.col, "duplicate d line for " + it.a);
        diff[static_cast<std::size_t>(g->second)] = std::move(value);
    }
    ModelFile out;
    out.value = validate_free(f.name, std::move(ctx), std::move(diff));
    return out;
}

ModelFile build_algebra(const RawFile& f)
{
    std::vector<std::string> names;
    std::vector<long> degrees;
    std::map<std::string, int> pos;
    std::string unit_name;
    for (const RawItem& it : f.items) {
        if (it.kind == RawItem::Gen) {
            if (pos.count(it.a)) throw SyntaxError(it.line, it.col, "duplicate basis element " + it.a);
            pos[it.a] = static_cast<int>(names.size());
            names.push_back(it.a);
            degrees.push_back(it.degree);
        } else if (it.kind == RawItem::Unit) {
            if (!unit_name.empty()) throw ValidationError(Err::NoUnit, "more than one unit line");
            unit_name = it.a;
        }
    }
    if (!unit_name.empty()) {
        auto u = pos.find(unit_name);
        if (u == pos.end())
            throw ValidationError(Err::NoUnit, "unit " + unit_name + " is not a declared element");
        if (degrees[static_cast<std::size_t>(u->second)] != 0)
            throw ValidationError(Err::NoUnit, "unit " + unit_name + " must have degree 0");
    }
    for (std::size_t i = 0; i < names.size(); ++i)
        if (degrees[i] == 0 && names[i] != unit_name)
            throw ValidationError(Err::NoUnit, "degree-0 element " + names[i] +
                                                   " is not the unit; degree 0 is spanned by the unit");

    // positive-part indexing (the unit is absorbed)
    std::vector<std::string> labels;
    std::vector<int> plus_index(names.size(), -1);
    FiniteAlgebraSpec spec;
    spec.name = f.name;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == unit_name) continue;
        plus_index[i] = static_cast<int>(labels.size());
        labels.push_back(names[i]);
        spec.degrees.push_back(static_cast<int>(degrees[i]));
    }
    spec.labels = labels;

    auto linear_value = [&](const std::vector<RawTerm>& poly, int line, int col) -> SparseVec {
        SparseVec v;
        for (const RawTerm& t : poly) {
            if (t.factors.size() != 1 || t.factors[0].second != 1)
                throw SyntaxError(t.line, t.col,
                                  "algebra table entries are linear combinations of basis elements");
            const std::string& nm = t.factors[0].first;
            auto F = pos.find(nm);
            if (F == pos.end()) throw SyntaxError(t.line, t.col, "unknown identifier " + nm);
            if (nm == unit_name)
                throw ValidationError(Err::NoUnit, "table entry involves the unit in degree > 0");
            sv_axpy(v, t.coeff, SparseVec::unit(plus_index[static_cast<std::size_t>(F->second)]));
        }
        (void)line;
        (void)col;
        return v;
    };

    for (const RawItem& it : f.items) {
        if (it.kind == RawItem::Mul) {
            auto A = pos.find(it.a);
            auto B = pos.find(it.b);
            if (A == pos.end()) throw SyntaxError(it.line, it.col, "unknown identifier " + it.a);
            if (B == pos.end()) throw SyntaxError(it.line, it.col, "unknown identifier " + it.b);
            bool a_unit = (it.a == unit_name), b_unit = (it.b == unit_name);
            if (a_unit && b_unit) {
                // only 1*1 = 1 may be stated
                bool ok = it.poly.size() == 1 && it.poly[0].coeff == 1 &&
                          it.poly[0].factors.size() == 1 && it.poly[0].factors[0].first == unit_name &&
                          it.poly[0].factors[0].second == 1;
                if (!ok) throw ValidationError(Err::NoUnit, "the unit must square to itself");
                continue;
            }
            if (a_unit || b_unit) {
                // a unit line must state the unit law
                const std::string& other = a_unit ? it.b : it.a;
                SparseVec v = linear_value(it.poly, it.line, it.col);
                SparseVec expect = SparseVec::unit(plus_index[static_cast<std::size_t>(pos[other])]);
                if (!(v == expect))
                    throw ValidationError(Err::NoUnit, "product with the unit must satisfy 1*x = x");
                continue;
            }
            int i = plus_index[static_cast<std::size_t>(A->second)];
            int j = plus_index[static_cast<std::size_t>(B->second)];
            if (spec.products.count({i, j}))
                throw SyntaxError(it.line, it.col, "duplicate mul line " + it.a + "*" + it.b);
            spec.products[{i, j}] = linear_value(it.poly, it.line, it.col);
        } else if (it.kind == RawItem::Diff) {
            auto A = pos.find(it.a);
            if (A == pos.end()) throw SyntaxError(it.line, it.col, "unknown identifier " + it.a);
            if (it.a == unit_name)
                throw ValidationError(Err::NoUnit, "the unit is a cocycle; no d line allowed");
            int i = plus_index[static_cast<std::size_t>(A->second)];
            if (spec.diff.count(i)) throw SyntaxError(it.line, it.col, "duplicate d line for " + it.a);
            spec.diff[i] = linear_value(it.poly, it.line, it.col);
        }
    }

    ModelFile out;
    out.value = validate_finite(spec);
    return out;
}

std::string poly_str_elem(const FreeModel& m, const Elem& x)
{
    if (x.is_zero()) return "0";
    std::string s;
    for (const auto& [mono, c] : x.terms()) {
        if (!s.empty()) s += " + ";
        if (c == 1)
            s += mono.str(m.ctx);
        else
            s += rat_str(c) + "*" + mono.str(m.ctx);
    }
    return s;
}

std::string poly_str_vec(const FiniteAlgebra& a, const SparseVec& v)
{
    if (v.empty()) return "0";
    std::string s;
    for (const auto& [i, c] : v.entries) {
        if (!s.empty()) s += " + ";
        if (c == 1)
            s += a.labels[static_cast<std::size_t>(i)];
        else
            s += rat_str(c) + "*" + a.labels[static_cast<std::size_t>(i)];
    }
    return s;
}

}  // namespace

std::string ModelFile::name() const
{
    return is_cdga() ? cdga().name : algebra().name;
}

ModelFile parse_model(const std::string& text)
{
    Parser p(text);
    RawFile raw = p.file();
    return raw.is_cdga ? build_cdga(raw) : build_algebra(raw);
}

ModelFile parse_model_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ValidationError(Err::InvalidParameter, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_model(ss.str());
}

std::string print_model(const FreeModel& m)
{
    std::string s = "cdga " + m.name + " {\n";
    for (const GenSym& g : m.ctx.gens())
        s += "  gen " + g.name + ":" + std::to_string(g.degree) + ";\n";
    for (std::size_t k = 0; k < m.ctx.size(); ++k)
        if (!m.diff[k].is_zero())
            s += "  d " + m.ctx.gen(static_cast<int>(k)).name + " = " + poly_str_elem(m, m.diff[k]) +
                 ";\n";
    s += "}\n";
    return s;
}

std::string print_model(const FiniteAlgebra& a)
{
    std::string s = "algebra " + a.name + " {\n";
    for (int i = 0; i < a.dim(); ++i)
        s += "  gen " + a.labels[static_cast<std::size_t>(i)] + ":" +
             std::to_string(a.degrees[static_cast<std::size_t>(i)]) + ";\n";
    for (int i = 0; i < a.dim(); ++i)
        for (int j = i; j < a.dim(); ++j) {
            const SparseVec& v = a.mul[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (!v.empty())
                s += "  mul " + a.labels[static_cast<std::size_t>(i)] + "*" +
                     a.labels[static_cast<std::size_t>(j)] + " = " + poly_str_vec(a, v) + ";\n";
        }
    for (int i = 0; i < a.dim(); ++i)
        if (!a.diff[static_cast<std::size_t>(i)].empty())
            s += "  d " + a.labels[static_cast<std::size_t>(i)] + " = " +
                 poly_str_vec(a, a.diff[static_cast<std::size_t>(i)]) + ";\n";
    s += "}\n";
    return s;
}

std::string print_model(const ModelFile& f)
{
    return f.is_cdga() ? print_model(f.cdga()) : print_model(f.algebra());
}

std::string model_digest(const ModelFile& f)
{
    std::string text = print_model(f);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

}  // namespace mapspace
