// eqalg command line front end
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "eqalg/document.hpp"
#include "eqalg/kzero.hpp"

using namespace eqa;

namespace {

enum Exit { kOk = 0, kFail = 1, kError = 2, kInconclusive = 3 };

std::uint64_t default_seed()
{
    if (const char* s = std::getenv("EQALG_SEED")) {
        try {
            return std::stoull(s);
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string("EQALG_SEED is not a number: ") + s);
        }
    }
    return 1;
}

std::string read_all(std::istream& is)
{
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

// path, "-" for stdin, or an example name
Document load(const std::string& arg, const ExampleParams& prm)
{
    if (arg == "-") return parse_document(read_all(std::cin));
    std::ifstream f(arg);
    if (f) {
        try {
            return parse_document(read_all(f));
        } catch (const ParseError& e) {
            throw std::runtime_error(arg + ": " + e.what());
        }
    }
    if (is_example_name(arg)) return make_example(arg, prm);
    throw std::runtime_error("cannot open '" + arg + "' and it is not an example name");
}

GreenFunctor need_green(const Document& d, const std::string& what)
{
    if (d.kind != "green") throw std::invalid_argument(what + " needs a Green functor document");
    return d.green;
}

void failure_section(const Report& r)
{
    std::cout << "failures:\n";
    for (const auto& f : r.failures) std::cout << "  " << f << "\n";
}

std::vector<int> parse_list(const std::string& s)
{
    std::vector<int> out;
    std::istringstream is(s);
    for (std::string t; std::getline(is, t, ',');)
        if (!t.empty()) out.push_back(std::stoi(t));
    return out;
}

void print_morphism(const Base& B, const MackeyMorphism& f)
{
    for (std::size_t s = 0; s < f.maps.size(); ++s) {
        std::cout << "level " << s << " " << f.maps[s].rows << "x" << f.maps[s].cols << "\n";
        std::cout << format_matrix(B, f.maps[s]);
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"eqalg: Mackey and Green functors for cyclic p-groups"};
    app.require_subcommand(1);
    ExampleParams prm;
    std::uint64_t seed = 0;
    bool seed_given = false;
    auto add_params = [&](CLI::App* c) {
        c->add_option("--p", prm.p, "prime")->each([&](const std::string&) { prm.p_given = true; });
        c->add_option("--n", prm.n, "group exponent")->each([&](const std::string&) { prm.n_given = true; });
    };
    auto add_seed = [&](CLI::App* c) {
        c->add_option("--seed", seed, "random seed (default $EQALG_SEED or 1)")->each([&](const std::string&) {
            seed_given = true;
        });
    };

    std::string name, out_path;
    auto* ex = app.add_subcommand("example", "print a named example document");
    ex->add_option("name", name, "burnside, constant-Z, constant-Fp, constant-F<p>, fp-galois, twisted-burnside-c5, char-example")
        ->required();
    add_params(ex);
    ex->add_option("--k", prm.k, "field degree for fp-galois");
    ex->add_option("-o,--output", out_path, "write to file");

    std::string doc, doc2;
    auto* check = app.add_subcommand("check", "validate the axioms of a document");
    check->add_option("doc", doc)->required();
    add_params(check);

    int stab = 0;
    auto* k0 = app.add_subcommand("k0free", "K0 of free modules over a fixed point meadow");
    add_params(k0);
    k0->add_option("--stab", stab, "stabilizer exponent r")->required();

    std::string summands, keep;
    auto* dec = app.add_subcommand("decompose", "split a random projective into free modules");
    dec->add_option("doc", doc, "Green meadow")->required();
    add_params(dec);
    dec->add_option("--summands", summands, "free summand levels, e.g. 0,1,1")->required();
    dec->add_option("--keep", keep, "kept summands as 0/1 flags, default all");
    add_seed(dec);

    int level = -1;
    bool emit_doc = false;
    auto* phi = app.add_subcommand("phi", "geometric fixed points and the rings R_m / im tr");
    phi->add_option("doc", doc)->required();
    add_params(phi);
    phi->add_option("--level", level, "only this level");
    phi->add_flag("--emit", emit_doc, "print the geometric fixed point functor as a document");

    auto* tau = app.add_subcommand("tau", "drop the bottom level");
    tau->add_option("doc", doc)->required();
    add_params(tau);

    auto* e1 = app.add_subcommand("e1", "E1 page rings, transfer flags and G0 ranks");
    e1->add_option("doc", doc)->required();
    add_params(e1);

    auto* box = app.add_subcommand("box", "box product of two Mackey functors");
    box->add_option("a", doc)->required();
    box->add_option("b", doc2)->required();
    add_params(box);

    auto* iso = app.add_subcommand("iso", "decide whether two Mackey functors are isomorphic");
    iso->add_option("a", doc)->required();
    iso->add_option("b", doc2)->required();
    add_params(iso);
    add_seed(iso);
    bool show_witness = false;
    iso->add_flag("--witness", show_witness, "print the isomorphism");

    CLI11_PARSE(app, argc, argv);
    const auto t0 = std::chrono::steady_clock::now();
    int code = kOk;
    try {
        if (!seed_given) seed = default_seed();
        if (*ex) {
            std::string text = print_document(make_example(name, prm));
            if (out_path.empty()) {
                std::cout << text;
            } else {
                std::ofstream f(out_path);
                if (!f) throw std::runtime_error("cannot write " + out_path);
                f << text;
            }
        } else if (*check) {
            Document d = load(doc, prm);
            Report r = check_axioms(d.functor());
            if (d.kind == "green") r.merge(check_green(d.green));
            if (d.kind == "module") r.merge(check_green_module(d.module));
            std::cout << "kind: " << d.kind << "\n" << describe(d.functor()) << "\n";
            std::cout << "verdict: " << (r.ok ? "pass" : "fail") << "\n";
            if (!r.ok) {
                failure_section(r);
                code = kFail;
            }
        } else if (*k0) {
            BurnsideQuotient q = k0_free_fixed_point(prm.p, prm.n, stab);
            std::cout << q.presentation << "\n";
            std::cout << "additive rank: " << q.ring.rank() << "\n";
        } else if (*dec) {
            GreenFunctor k = need_green(load(doc, prm), "decompose");
            std::vector<int> idx = parse_list(summands);
            std::vector<bool> kp(idx.size(), true);
            if (!keep.empty()) {
                std::vector<int> f = parse_list(keep);
                if (f.size() != idx.size()) throw std::invalid_argument("--keep needs one flag per summand");
                for (std::size_t i = 0; i < f.size(); ++i) kp[i] = f[i] != 0;
            }
            RandomProjective rp = random_projective(k, idx, kp, seed);
            FreeDecomposition fd = freeness_decompose(k, rp.F, rp.e, seed);
            std::cout << "seed: " << seed << "\n";
            if (!fd.ok) {
                std::cout << "verdict: fail\nfailures:\n  " << fd.failure << "\n";
                code = kFail;
            } else {
                std::cout << "verdict: decomposed\nmultiplicities:";
                for (long m : fd.multiplicities) std::cout << " " << m;
                std::cout << (fd.canonical ? " (canonical)" : "") << "\nraw:";
                for (long m : fd.raw) std::cout << " " << m;
                std::cout << "\nwitness:\n";
                print_morphism(k.base(), fd.witness);
            }
        } else if (*phi) {
            Document d = load(doc, prm);
            if (emit_doc) {
                if (d.kind == "green")
                    std::cout << print_document(Document::of(geometric_fixed_points_green(d.green).R));
                else
                    std::cout << print_document(Document::of(geometric_fixed_points(d.functor())));
            } else {
                GreenFunctor R = need_green(d, "phi");
                for (int m = 0; m <= R.n(); ++m) {
                    if (level >= 0 && m != level) continue;
                    PhiRing ph = phi_ring(R, m);
                    std::cout << "level " << m << ": " << ring_name(ph.ring) << " rank " << ph.ring.rank()
                              << ", acted on by C" << R.M.G.ipow(ph.weyl_exponent) << " as "
                              << twisted_ring_name(ph, R.M.G.p) << "\n";
                }
            }
        } else if (*tau) {
            Document d = load(doc, prm);
            if (d.kind == "green")
                std::cout << print_document(Document::of(tau_green(d.green)));
            else if (d.kind == "module")
                std::cout << print_document(Document::of(tau_module(d.module)));
            else
                std::cout << print_document(Document::of(tau_geq_1(d.mackey)));
        } else if (*e1) {
            G0Splitting g = g0_splitting(need_green(load(doc, prm), "e1"));
            std::cout << e1_summary(g) << "\n";
        } else if (*box) {
            MackeyFunctor A = load(doc, prm).functor(), B = load(doc2, prm).functor();
            std::cout << print_document(Document::of(box_product(A, B).P));
        } else if (*iso) {
            MackeyFunctor A = load(doc, prm).functor(), B = load(doc2, prm).functor();
            IsoOptions opt;
            opt.seed = seed;
            IsoVerdict v = is_isomorphic(A, B, opt);
            std::cout << "verdict: " << v.kind_name() << "\ncertificate: " << v.certificate << "\n";
            if (v.kind == IsoVerdict::Kind::Iso && show_witness) {
                std::cout << "witness:\n";
                print_morphism(A.base, v.witness);
            }
            if (v.kind == IsoVerdict::Kind::Inconclusive) code = kInconclusive;
        }
    } catch (const std::exception& e) {
        std::cout << "verdict: error\nfailures:\n  " << e.what() << "\n";
        std::cerr << "eqalg: " << e.what() << "\n";
        code = kError;
    }
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << "time: " << ms << " ms\n";
    return code;
}
