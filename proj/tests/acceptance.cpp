// acceptance driver: one PASS/FAIL line per criterion, nonzero exit on any failure
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "eqalg/document.hpp"
#include "support.hpp"

using namespace eqa;
using namespace eqa::testing;

namespace {

struct Outcome {
    bool ok = true;
    std::string why;
    void require(bool cond, const std::string& what)
    {
        if (!cond && ok) {
            ok = false;
            why = what;
        }
    }
};

template <class T>
std::string show(const std::vector<T>& v)
{
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ")";
    return os.str();
}

bool module_iso_witness(const GreenModule& a, const GreenModule& b, const MackeyMorphism& f)
{
    return is_module_map(a, b, f) && is_invertible(a.M, b.M, f);
}

std::vector<GreenFunctor> zoo(int p, int n)
{
    CyclicGroup G(p, n);
    std::vector<GreenFunctor> out{constant_green(Base::prime(p), G), constant_green(Base::integers(), G),
                                  burnside_green(G), burnside_green(G, Base::prime(p))};
    if (n >= 1 && n <= 2) out.push_back(fp_galois(p, n, p));
    return out;
}

Outcome burnside_presentation()
{
    Outcome o;
    BasedRing A = burnside_ring(CyclicGroup(2, 2));
    std::string got = render_presentation(A);
    o.require(got == "Z[x,y]/(x^2-2x,y^2-4y,xy-2y)", "presentation " + got);
    // x = [C4/C2], y = [C4/e] in the orbit basis (index s <-> [C4/C_{2^s}])
    auto prod = [&](std::size_t a, std::size_t b) { return A.basis_product(a, b); };
    o.require(prod(1, 1) == Vec{0, 2, 0}, "x^2 != 2x");
    o.require(prod(0, 0) == Vec{4, 0, 0}, "y^2 != 4y");
    o.require(prod(1, 0) == Vec{2, 0, 0}, "xy != 2y");
    return o;
}

Outcome k0_free()
{
    Outcome o;
    BurnsideQuotient q = k0_free_fixed_point(2, 2, 1);
    o.require(q.ring.group.is_free() && q.ring.rank() == 2, "additive group is not Z^2");
    o.require(q.presentation == "Z[y]/(y^2-4y)", "presentation " + q.presentation);
    // the stabilizer level of FP(F4) over C4 is 1
    o.require(dim_matrix(fp_galois(2, 2, 2)).r == 1, "stabilizer level of FP(F4) over C4");
    return o;
}

Outcome free_dims()
{
    Outcome o;
    for (int p : {2, 3})
        for (int n = 0; n <= 3; ++n)
            for (const auto& R : zoo(p, n)) {
                const CyclicGroup& G = R.M.G;
                for (int i = 0; i <= n; ++i) {
                    GreenModule F = free_module(R, i);
                    for (int s = 0; s <= n; ++s) {
                        std::size_t want = s >= i ? R.M.dim(i) * G.ipow(n - s) : R.M.dim(s) * G.ipow(n - i);
                        std::ostringstream w;
                        w << "p=" << p << " n=" << n << " i=" << i << " s=" << s << " base " << R.base().name()
                          << ": " << F.M.dim(s) << " != " << want;
                        o.require(F.M.dim(s) == want, w.str());
                    }
                }
            }
    return o;
}

Outcome tau_free()
{
    Outcome o;
    for (int p : {2, 3})
        for (int n = 1; n <= 3; ++n)
            for (const auto& R : zoo(p, n)) {
                GreenFunctor tR = tau_green(R);
                for (int i = 1; i <= n; ++i) {
                    GreenModule a = tau_module(free_module(R, i)), b = free_module(tR, i - 1);
                    std::ostringstream w;
                    w << "p=" << p << " n=" << n << " i=" << i << " base " << R.base().name();
                    if (a.M.dims() != b.M.dims()) {
                        o.require(false, w.str() + ": dimensions differ");
                        continue;
                    }
                    // the levelwise identity, checked as an invertible module map
                    o.require(module_iso_witness(a, b, identity_morphism(a.M)), w.str() + ": witness rejected");
                }
            }
    return o;
}

Outcome projectives()
{
    Outcome o;
    std::vector<GreenFunctor> ks{constant_green(Base::prime(2), CyclicGroup(2, 1)),
                                 constant_green(Base::prime(2), CyclicGroup(2, 2)), fp_galois(2, 1, 2)};
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 20; ++t) {
        const GreenFunctor& k = ks[t % ks.size()];
        const int n = k.n();
        std::uniform_int_distribution<int> lv(0, n), cnt(1, 3), coin(0, 1);
        std::vector<int> idx;
        std::vector<bool> keep;
        const int c = cnt(rng);
        for (int j = 0; j < c; ++j) {
            idx.push_back(lv(rng));
            keep.push_back(coin(rng) == 1);
        }
        keep[0] = true;
        RandomProjective rp = random_projective(k, idx, keep, 1000 + t);
        FreeDecomposition fd = freeness_decompose(k, rp.F, rp.e, 1000 + t);
        std::string tag = "case " + std::to_string(t) + " summands " + show(idx);
        if (!fd.ok) {
            o.require(false, tag + ": " + fd.failure);
            continue;
        }
        o.require(module_iso_witness(fd.P, fd.candidate, fd.witness), tag + ": witness rejected");
        const bool char_p = k.base().characteristic() == k.M.G.p;
        std::vector<long> want =
            fd.canonical ? classify_free(k.M.G.p, n, dim_matrix(k).r, rp.expected, char_p) : rp.expected;
        o.require((fd.canonical ? fd.multiplicities : fd.raw) == want,
                  tag + ": multiplicities " + show(fd.multiplicities) + " expected " + show(want));
    }
    return o;
}

Outcome k0_f2()
{
    Outcome o;
    GreenFunctor k = constant_green(Base::prime(2), CyclicGroup(2, 1));
    DimensionMatrix D = dim_matrix(k);
    // r = n: no collapsing, the canonical forms are all multiplicity vectors
    o.require(D.r == 1, "stabilizer level");
    o.require(abs(D.gamma_det()) == 1, "dimension matrix is not unimodular");
    GreenModule F0 = free_module(k, 0), F1 = free_module(k, 1);
    o.require(is_isomorphic(F0.M, F1.M).kind == IsoVerdict::Kind::NonIso, "F0 and F1 isomorphic");
    // F0 is not a multiple of F1: F1 = k has dims (1,1), F0 has (2,1)
    o.require(F0.M.dims() == std::vector<std::size_t>{2, 1} && F1.M.dims() == std::vector<std::size_t>{1, 1},
              "free module dimensions");
    for (long a = 0; a < 3; ++a)
        for (long b = 0; b < 3; ++b)
            o.require(classify_free(2, 1, D.r, {a, b}, true) == std::vector<long>{a, b}, "classify_free collapsed");
    BurnsideQuotient q = k0_free_fixed_point(2, 1, D.r);
    o.require(q.ring.rank() == burnside_ring(CyclicGroup(2, 1)).rank() && q.ring.group.is_free(),
              "K0 is not A(C2) additively");
    G0Splitting g = g0_splitting(k);
    o.require(g.total && *g.total == 2, "G0 total");
    return o;
}

Outcome twisted()
{
    Outcome o;
    MackeyFunctor A = burnside_mackey(CyclicGroup(5, 1)), T = twisted_burnside_c5();
    MackeyFunctor TT = box_product_cp(T, T);
    IsoVerdict v = is_isomorphic(TT, A);
    o.require(v.kind == IsoVerdict::Kind::Iso, "box square not found isomorphic: " + v.certificate);
    if (v.kind == IsoVerdict::Kind::Iso)
        o.require(check_morphism(TT, A, v.witness).ok && is_invertible(TT, A, v.witness), "witness rejected");
    IsoVerdict w = is_isomorphic(A, T);
    o.require(w.kind == IsoVerdict::Kind::NonIso, "A and twisted A not separated");
    o.require(w.modulus == 5, "certificate modulus " + std::to_string(w.modulus));
    return o;
}

Outcome axioms()
{
    Outcome o;
    auto green = [&](const GreenFunctor& R, const std::string& tag) {
        Report r = check_axioms(R.M);
        r.merge(check_green(R));
        r.merge(check_green_module(regular_module(R)));
        o.require(r.ok, tag + ": " + r.summary());
    };
    auto module = [&](const GreenModule& X, const std::string& tag) {
        Report r = check_axioms(X.M);
        r.merge(check_green_module(X));
        o.require(r.ok, tag + ": " + r.summary());
    };
    auto mackey = [&](const MackeyFunctor& M, const std::string& tag) {
        Report r = check_axioms(M);
        o.require(r.ok, tag + ": " + r.summary());
    };
    for (int p : {2, 3})
        for (int n = 0; n <= 3; ++n) {
            const std::string at = " p=" + std::to_string(p) + " n=" + std::to_string(n);
            for (const auto& R : zoo(p, n)) {
                const std::string tag = R.base().name() + at;
                green(R, "green " + tag);
                for (int i = 0; i <= n; ++i) module(free_module(R, i), "free " + tag);
                mackey(brutal_truncation(R.M), "brutal " + tag);
                if (n >= 1) {
                    green(tau_green(R), "tau " + tag);
                    green(geometric_fixed_points_green(R).R, "phi " + tag);
                    green(restrict_green(R, n - 1), "restrict " + tag);
                    mackey(induce_mackey(restrict_mackey(R.M, n - 1), n), "induce " + tag);
                }
                if (R.base().is_field() || n == 0) green(brutal_truncation_green(R), "brutal green " + tag);
            }
            if (n == 1) {
                green(char_example(p), "char example" + at);
                green(trivial_meadow(p, 2), "trivial meadow" + at);
                MackeyFunctor F = fp_galois(p, 1, p).M;
                mackey(box_product(F, F).P, "box" + at);
            }
        }
    mackey(twisted_burnside_c5(), "twisted Burnside");
    mackey(box_product_cp(twisted_burnside_c5(), twisted_burnside_c5()), "twisted box");
    mackey(fp_galois(2, 2, 4).M, "FP(F16) C4");
    return o;
}

Outcome faithful_collapse()
{
    Outcome o;
    GreenFunctor R = fp_galois(2, 1, 2);
    E1Page e = e1_page(R);
    o.require(e.surjective_transfer, "transfer not surjective");
    o.require(geometric_fixed_points(R.M).is_zero(), "geometric fixed points nonzero");
    o.require(e.entries.size() == 1, "E1 page has " + std::to_string(e.entries.size()) + " rings");
    if (e.entries.size() == 1) {
        const E1Entry& t = e.entries[0];
        // F4 twisted by Frobenius over C2: rank 4 over F2 with one simple module, i.e. M_2(F2)
        o.require(t.twisted && t.twisted->ring.rank() == 4, "twisted ring rank");
        o.require(twisted_simples(R.rings[0], R.M.weyl[0], 2, 1) == 1, "more than one simple");
    }
    G0Splitting g = g0_splitting(R);
    o.require(g.total && *g.total == 1, "G0 rank");
    return o;
}

Outcome resolution()
{
    Outcome o;
    for (int p : {2, 3, 5}) {
        ResolutionCheck r = constant_Z_resolution_check(p);
        o.require(r.report.ok, "p=" + std::to_string(p) + ": " + r.report.summary());
        o.require(r.k0_class == std::vector<long>{0, 0}, "p=" + std::to_string(p) + ": class " + show(r.k0_class));
    }
    return o;
}

Outcome orbit_oracle()
{
    Outcome o;
    const Base Z = Base::integers();
    for (int p : {2, 3})
        for (int n = 0; n <= 3; ++n) {
            CyclicGroup G(p, n);
            for (int i = 0; i <= n; ++i)
                for (int j = 0; j <= n; ++j) {
                    // walk orbits of the diagonal action on Z/p^{n-i} x Z/p^{n-j}
                    const long a = G.ipow(n - i), b = G.ipow(n - j);
                    std::vector<Scalar> mult(n + 1, 0);
                    std::set<std::pair<long, long>> seen;
                    for (long x = 0; x < a; ++x)
                        for (long y = 0; y < b; ++y) {
                            if (seen.count({x, y})) continue;
                            long len = 0, u = x, v = y;
                            do {
                                seen.insert({u, v});
                                u = (u + 1) % a;
                                v = (v + 1) % b;
                                ++len;
                            } while (u != x || v != y);
                            int s = 0;
                            while (G.ipow(s) * len != G.order()) ++s;
                            mult[s] += 1;
                        }
                    o.require(orbit_product(G, i, j).mult == mult, "orbit product p=" + std::to_string(p) +
                                                                       " n=" + std::to_string(n));
                    Vec mi = marks(FiniteGSet::orbit(G, i)), mj = marks(FiniteGSet::orbit(G, j));
                    Vec mij = marks(orbit_product(G, i, j));
                    for (int t = 0; t <= n; ++t) o.require(mij[t] == mi[t] * mj[t], "marks not multiplicative");
                }
            o.require(det(Z, marks_matrix(G)) != 0, "marks not injective");
            o.require(marks(FiniteGSet::orbit(G, n)) == Vec(n + 1, 1), "marks not unital");
        }
    return o;
}

Outcome flatness()
{
    Outcome o;
    std::mt19937_64 rng(12);
    int done = 0;
    for (int t = 0; t < 30; ++t) {
        const int p = t % 2 ? 3 : 2;
        GreenFunctor k = constant_green(Base::prime(p), CyclicGroup(p, 1));
        GreenFunctor l = trivial_meadow(p, 2);
        GreenMap f = prime_inclusion(k, l);
        std::uniform_int_distribution<int> lv(0, 1), cnt(1, 2);
        std::vector<int> idx;
        for (int j = cnt(rng); j > 0; --j) idx.push_back(lv(rng));
        GreenModule M = free_sum(k, idx);
        SubGreenModule N = random_submodule(M, rng);
        const std::string tag = "case " + std::to_string(t);
        BaseChange BM = base_change_cp(k, l, f, M), BN = base_change_cp(k, l, f, N.X);
        MackeyMorphism g = base_change_map(BN, BM, MackeyMorphism{N.incl}, N.X, M);
        o.require(check_morphism(BN.module.M, BM.module.M, g).ok, tag + ": induced map invalid");
        o.require(levelwise_injective(BN.module.M, g), tag + ": injectivity lost");
        o.require(N.X.M.is_zero() == BN.module.M.is_zero(), tag + ": nonzero submodule became zero");
        o.require(!BM.module.M.is_zero(), tag + ": nonzero module became zero");
        GreenModule Q = quotient_module(M, N.incl);
        o.require(Q.M.is_zero() == base_change_cp(k, l, f, Q).module.M.is_zero(), tag + ": quotient");
        ++done;
    }
    o.require(done == 30, "only " + std::to_string(done) + " cases");
    for (int p : {2, 3}) o.require(trivial_meadow(p, 2).M.tr[0].is_zero(), "target transfer nonzero");
    return o;
}

}  // namespace

int main()
{
    struct Criterion {
        const char* name;
        double limit;  // seconds
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> all{
        {"Burnside presentation of C4", 1, burnside_presentation},
        {"K0 of free FP(F4)-modules over C4", 1, k0_free},
        {"free module levelwise values", 10, free_dims},
        {"truncation of free modules", 10, tau_free},
        {"projective modules are free", 60, projectives},
        {"K0 of constant F2 over C2", 5, k0_f2},
        {"twisted Burnside functor", 10, twisted},
        {"axiom suites", 30, axioms},
        {"faithful action collapse", 5, faithful_collapse},
        {"resolution of constant Z", 5, resolution},
        {"orbit products and marks", 10, orbit_oracle},
        {"flatness of base change", 30, flatness},
    };
    int failed = 0;
    for (std::size_t i = 0; i < all.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = all[i].run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.why = std::string("exception: ") + e.what();
        }
        const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (o.ok && sec > all[i].limit) {
            o.ok = false;
            o.why = "over the time limit";
        }
        char line[256];
        std::snprintf(line, sizeof line, "%s %2zu %-36s %8.3f s", o.ok ? "PASS" : "FAIL", i + 1, all[i].name, sec);
        std::cout << line << (o.ok ? "" : "  " + o.why) << "\n";
        failed += !o.ok;
    }
    std::cout << (all.size() - failed) << "/" << all.size() << " criteria passed\n";
    return failed ? 1 : 0;
}
