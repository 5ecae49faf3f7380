#include "eqalg/document.hpp"

#include <regex>
#include <sstream>

namespace eqa {

Document Document::of(const MackeyFunctor& M)
{
    Document d;
    d.kind = "mackey";
    d.mackey = M;
    return d;
}

Document Document::of(const GreenFunctor& R)
{
    Document d;
    d.kind = "green";
    d.green = R;
    return d;
}

Document Document::of(const GreenModule& X)
{
    Document d;
    d.kind = "module";
    d.module = X;
    return d;
}

const MackeyFunctor& Document::functor() const
{
    if (kind == "green") return green.M;
    if (kind == "module") return module.M;
    return mackey;
}

// --- printing -----------------------------------------------------------------

std::string format_scalar(const Base& B, const Scalar& x)
{
    if (B.kind() != Base::Kind::Extension) return x.get_str();
    const Field& F = B.field();
    auto c = F.coeffs(x.get_ui());
    std::string s = "[";
    for (int i = 0; i < F.k(); ++i) s += (i ? "," : "") + std::to_string(i < static_cast<int>(c.size()) ? c[i] : 0);
    return s + "]";
}

std::string format_matrix(const Base& B, const Matrix& M)
{
    std::string s;
    for (std::size_t i = 0; i < M.rows; ++i) {
        for (std::size_t j = 0; j < M.cols; ++j) s += (j ? " " : "") + format_scalar(B, M(i, j));
        s += "\n";
    }
    return s;
}

static void put_matrix(std::ostream& os, const Base& B, const std::string& head, const Matrix& M)
{
    os << head << " " << M.rows << "x" << M.cols << "\n" << format_matrix(B, M);
}

static void put_functor(std::ostream& os, const std::string& name, const MackeyFunctor& M)
{
    os << "functor " << name << "\n";
    for (int s = 0; s <= M.n(); ++s) {
        os << "level " << s << " tors";
        for (const auto& t : M.levels[s].tors) os << " " << t.get_str();
        os << "\n";
    }
    for (int s = 0; s < M.n(); ++s) put_matrix(os, M.base, "res " + std::to_string(s), M.res[s]);
    for (int s = 0; s < M.n(); ++s) put_matrix(os, M.base, "tr " + std::to_string(s), M.tr[s]);
    for (int s = 0; s <= M.n(); ++s) put_matrix(os, M.base, "weyl " + std::to_string(s), M.weyl[s]);
    os << "end\n";
}

static std::string clean_label(std::string l)
{
    for (auto& c : l)
        if (c == ' ' || c == '\t') c = '_';
    return l.empty() ? "_" : l;
}

static void put_rings(std::ostream& os, const GreenFunctor& R)
{
    const Base& B = R.base();
    for (int s = 0; s <= R.n(); ++s) {
        const BasedRing& r = R.rings[s];
        os << "ring " << s << "\n";
        put_matrix(os, B, "mult", r.mult);
        os << "unit";
        for (const auto& x : r.unit) os << " " << format_scalar(B, x);
        os << "\nlabels";
        for (const auto& l : r.labels) os << " " << clean_label(l);
        os << "\nend\n";
    }
}

std::string print_document(const Document& d)
{
    std::ostringstream os;
    const MackeyFunctor& M = d.functor();
    os << "eqalg-document 1\n";
    os << "kind " << d.kind << "\n";
    os << "group " << M.G.p << " " << M.G.n << "\n";
    if (M.base.is_field()) {
        const Field& F = M.base.field();
        os << "base GF " << F.p() << " " << F.k();
        for (int c : F.modulus()) os << " " << c;
        os << "\n";
    } else {
        os << "base Z\n";
    }
    if (d.kind == "mackey") {
        put_functor(os, "mackey", d.mackey);
    } else if (d.kind == "green") {
        put_functor(os, "ring", d.green.M);
        put_rings(os, d.green);
    } else if (d.kind == "module") {
        put_functor(os, "ring", d.module.R.M);
        put_rings(os, d.module.R);
        put_functor(os, "module", d.module.M);
        for (int s = 0; s <= d.module.M.n(); ++s)
            put_matrix(os, M.base, "act " + std::to_string(s), d.module.act[s]);
    } else {
        throw std::invalid_argument("print_document: unknown kind " + d.kind);
    }
    return os.str();
}

// --- parsing ------------------------------------------------------------------

namespace {

struct Line {
    int no;
    std::vector<std::string> tok;
};

struct Reader {
    std::vector<Line> lines;
    std::size_t pos = 0;
    Base base;
    CyclicGroup G;

    explicit Reader(const std::string& text)
    {
        std::istringstream is(text);
        std::string raw;
        int no = 0;
        while (std::getline(is, raw)) {
            ++no;
            auto h = raw.find('#');
            if (h != std::string::npos) raw.erase(h);
            std::istringstream ls(raw);
            Line L{no, {}};
            for (std::string t; ls >> t;) L.tok.push_back(t);
            if (!L.tok.empty()) lines.push_back(L);
        }
    }

    int last_line() const { return lines.empty() ? 0 : lines.back().no; }
    bool done() const { return pos >= lines.size(); }
    const Line& peek() const
    {
        if (done()) throw ParseError(last_line(), "unexpected end of document");
        return lines[pos];
    }
    const Line& next()
    {
        const Line& L = peek();
        ++pos;
        return L;
    }

    const Line& expect(const std::string& word, std::size_t min_tokens = 1)
    {
        const Line& L = next();
        if (L.tok[0] != word) throw ParseError(L.no, "expected '" + word + "', found '" + L.tok[0] + "'");
        if (L.tok.size() < min_tokens) throw ParseError(L.no, "'" + word + "' line is too short");
        return L;
    }

    static long integer(const Line& L, const std::string& t)
    {
        try {
            std::size_t used = 0;
            long v = std::stol(t, &used);
            if (used != t.size()) throw std::invalid_argument(t);
            return v;
        } catch (const std::exception&) {
            throw ParseError(L.no, "not an integer: '" + t + "'");
        }
    }

    Scalar scalar(const Line& L, const std::string& t) const
    {
        if (base.kind() == Base::Kind::Extension) {
            if (t.size() < 2 || t.front() != '[' || t.back() != ']')
                throw ParseError(L.no, "expected a coefficient vector, found '" + t + "'");
            std::vector<int> c;
            std::string body = t.substr(1, t.size() - 2);
            std::istringstream cs(body);
            for (std::string part; std::getline(cs, part, ',');) c.push_back(static_cast<int>(integer(L, part)));
            const Field& F = base.field();
            if (static_cast<int>(c.size()) != F.k())
                throw ParseError(L.no, "coefficient vector '" + t + "' has wrong length");
            for (int x : c)
                if (x < 0 || x >= F.p()) throw ParseError(L.no, "coefficient out of range in '" + t + "'");
            return Scalar(static_cast<unsigned long>(F.pack(c)));
        }
        try {
            Scalar v(t);
            if (base.is_field() && (v < 0 || v >= static_cast<long>(base.size())))
                throw ParseError(L.no, "field element out of range: '" + t + "'");
            return v;
        } catch (const std::invalid_argument&) {
            throw ParseError(L.no, "not an integer: '" + t + "'");
        }
    }

    Matrix matrix(const std::string& word, int index)
    {
        const Line& H = expect(word, index >= 0 ? 3 : 2);
        if (index >= 0 && integer(H, H.tok[1]) != index)
            throw ParseError(H.no, word + " index " + H.tok[1] + ", expected " + std::to_string(index));
        const std::string& shape = H.tok.back();
        auto x = shape.find('x');
        if (x == std::string::npos) throw ParseError(H.no, "bad shape '" + shape + "'");
        const long r = integer(H, shape.substr(0, x)), c = integer(H, shape.substr(x + 1));
        if (r < 0 || c < 0) throw ParseError(H.no, "negative shape");
        Matrix M(r, c);
        for (long i = 0; i < r; ++i) {
            const Line& L = next();
            if (static_cast<long>(L.tok.size()) != c)
                throw ParseError(L.no, "row has " + std::to_string(L.tok.size()) + " entries, expected " +
                                           std::to_string(c));
            for (long j = 0; j < c; ++j) M(i, j) = scalar(L, L.tok[j]);
        }
        return M;
    }

    MackeyFunctor functor(const std::string& name)
    {
        const Line& H = expect("functor", 2);
        if (H.tok[1] != name) throw ParseError(H.no, "expected functor '" + name + "'");
        const int start = H.no;
        std::vector<FPModule> levels;
        for (int s = 0; s <= G.n; ++s) {
            const Line& L = expect("level", 3);
            if (integer(L, L.tok[1]) != s || L.tok[2] != "tors") throw ParseError(L.no, "expected 'level " + std::to_string(s) + " tors ...'");
            FPModule X(base, 0);
            for (std::size_t i = 3; i < L.tok.size(); ++i) {
                long t = integer(L, L.tok[i]);
                if (t < 0 || t == 1 || (base.is_field() && t != 0)) throw ParseError(L.no, "invalid torsion order");
                X.tors.push_back(Scalar(t));
            }
            levels.push_back(X);
        }
        std::vector<Matrix> res, tr, weyl;
        for (int s = 0; s < G.n; ++s) res.push_back(matrix("res", s));
        for (int s = 0; s < G.n; ++s) tr.push_back(matrix("tr", s));
        for (int s = 0; s <= G.n; ++s) weyl.push_back(matrix("weyl", s));
        expect("end");
        try {
            return make_mackey(G, base, levels, res, tr, weyl);
        } catch (const std::invalid_argument& e) {
            throw ParseError(start, e.what());
        }
    }

    GreenFunctor rings(const MackeyFunctor& M)
    {
        std::vector<BasedRing> rs;
        for (int s = 0; s <= G.n; ++s) {
            const Line& H = expect("ring", 2);
            if (integer(H, H.tok[1]) != s) throw ParseError(H.no, "expected ring " + std::to_string(s));
            Matrix mult = matrix("mult", -1);
            const Line& U = expect("unit");
            Vec unit;
            for (std::size_t i = 1; i < U.tok.size(); ++i) unit.push_back(scalar(U, U.tok[i]));
            const Line& Lb = expect("labels");
            std::vector<std::string> labels(Lb.tok.begin() + 1, Lb.tok.end());
            expect("end");
            if (labels.size() != M.dim(s)) throw ParseError(Lb.no, "wrong number of labels");
            try {
                rs.push_back(make_based_ring(M.levels[s], mult, unit, labels));
            } catch (const std::invalid_argument& e) {
                throw ParseError(H.no, e.what());
            }
        }
        return make_green(M, rs);
    }
};

}  // namespace

Document parse_document(const std::string& text)
{
    Reader rd(text);
    const Line& H = rd.expect("eqalg-document", 2);
    if (H.tok[1] != "1") throw ParseError(H.no, "unsupported version " + H.tok[1]);
    Document d;
    const Line& K = rd.expect("kind", 2);
    d.kind = K.tok[1];
    if (d.kind != "mackey" && d.kind != "green" && d.kind != "module") throw ParseError(K.no, "unknown kind " + d.kind);
    const Line& Gl = rd.expect("group", 3);
    try {
        rd.G = CyclicGroup(static_cast<int>(Reader::integer(Gl, Gl.tok[1])), static_cast<int>(Reader::integer(Gl, Gl.tok[2])));
    } catch (const std::invalid_argument& e) {
        throw ParseError(Gl.no, e.what());
    }
    const Line& Bl = rd.expect("base", 2);
    if (Bl.tok[1] == "Z") {
        rd.base = Base::integers();
    } else if (Bl.tok[1] == "GF" && Bl.tok.size() >= 4) {
        const int p = static_cast<int>(Reader::integer(Bl, Bl.tok[2])), k = static_cast<int>(Reader::integer(Bl, Bl.tok[3]));
        std::vector<int> mod;
        for (std::size_t i = 4; i < Bl.tok.size(); ++i) mod.push_back(static_cast<int>(Reader::integer(Bl, Bl.tok[i])));
        try {
            rd.base = Base::field(gf_make(p, k, mod));
        } catch (const std::invalid_argument& e) {
            throw ParseError(Bl.no, e.what());
        }
    } else {
        throw ParseError(Bl.no, "base must be 'Z' or 'GF p k modulus...'");
    }
    if (d.kind == "mackey") {
        d.mackey = rd.functor("mackey");
    } else {
        GreenFunctor R = rd.rings(rd.functor("ring"));
        if (d.kind == "green") {
            d.green = R;
        } else {
            d.module.R = R;
            d.module.M = rd.functor("module");
            for (int s = 0; s <= rd.G.n; ++s) {
                Matrix A = rd.matrix("act", s);
                const std::size_t dm = d.module.M.dim(s);
                if (A.rows != dm || A.cols != R.rings[s].rank() * dm)
                    throw ParseError(rd.lines[rd.pos - 1 - A.rows].no, "act " + std::to_string(s) + " has wrong shape");
                d.module.act.push_back(A);
            }
        }
    }
    if (!rd.done()) throw ParseError(rd.peek().no, "trailing content");
    return d;
}

// --- named examples -------------------------------------------------------------

GreenFunctor char_example(int p) { return burnside_green(CyclicGroup(p, 1), Base::prime(p)); }

bool is_example_name(const std::string& name)
{
    static const std::regex re("burnside|constant-Z|constant-Fp|constant-F[0-9]+|fp-galois|twisted-burnside-c5|char-example");
    return std::regex_match(name, re);
}

Document make_example(const std::string& name, ExampleParams prm)
{
    std::smatch m;
    static const std::regex constF("constant-F([0-9]+)");
    if (name == "burnside") return Document::of(burnside_green(CyclicGroup(prm.p, prm.n)));
    if (name == "constant-Z") return Document::of(constant_green(Base::integers(), CyclicGroup(prm.p, prm.n)));
    if (name == "constant-Fp") return Document::of(constant_green(Base::prime(prm.p), CyclicGroup(prm.p, prm.n)));
    if (std::regex_match(name, m, constF)) {
        const int q = std::stoi(m[1]);
        if (prm.p_given && prm.p != q) throw std::invalid_argument(name + " conflicts with --p " + std::to_string(prm.p));
        return Document::of(constant_green(Base::prime(q), CyclicGroup(q, prm.n)));
    }
    if (name == "fp-galois") return Document::of(fp_galois(prm.p, prm.n, prm.k));
    if (name == "twisted-burnside-c5") return Document::of(twisted_burnside_c5());
    if (name == "char-example") {
        if (prm.n_given && prm.n != 1) throw std::invalid_argument("char-example is a C_p functor (n = 1)");
        return Document::of(char_example(prm.p));
    }
    throw std::invalid_argument("unknown example '" + name + "'");
}

}  // namespace eqa
