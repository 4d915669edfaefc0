#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "gl2dc/oracle.hpp"
#include "gl2dc/zeta.hpp"

using namespace gl2dc;

namespace {

struct GlobalOpts {
    bool json = false;
    uint64_t seed = 0x676c326463ull;
    int threads = static_cast<int>(std::thread::hardware_concurrency());
    std::string cache_path;
    bool assume_maximal_image = false;
    uint64_t max_q = 1'000'000;
    uint64_t verify_budget = 100'000'000;
    int decimals = 2;
};

ZetaOptions zeta_opts(const GlobalOpts& g) {
    ZetaOptions z;
    z.elliptic.seed = g.seed;
    z.elliptic.max_q = g.max_q;
    z.threads = g.threads;
    z.cache_path = g.cache_path;
    z.assume_maximal_image = g.assume_maximal_image;
    z.progress = [](const std::string& msg) { std::cerr << msg << "\n"; };
    return z;
}

void print_type(const DCType& t, const GlobalOpts& g) {
    std::cout << (g.json ? t.json() : t.to_string()) << "\n";
}

std::pair<Int, int> parse_pn(const std::string& ps, int n) {
    Int p(ps);
    if (n < 1 || p < 3 || !is_prime(p))
        throw std::invalid_argument("p must be an odd prime and n >= 1");
    return {p, n};
}

int run_verify(const GlobalOpts& g) {
    oracle::Limits lim;
    lim.max_steps = g.verify_budget;
    int failures = 0;
    auto report = [&](const std::string& name, bool ok) {
        std::cout << (ok ? "ok   " : "FAIL ") << name << "\n";
        if (!ok) ++failures;
    };

    for (auto [pp, nn] : {std::pair<int, int>{3, 1}, {5, 1}, {7, 1}, {3, 2}, {5, 2}, {3, 3}}) {
        Int p(pp);
        int n = nn;
        Int total = 0;
        bool round_trip = true, oracle_match = true;
        for (const ClassLabel& L : enumerate_classes(p, n)) {
            total += class_size(L);
            Mat2 rep = representative(L);
            if (!(classify(rep, p, n) == L)) round_trip = false;
            if (!(unramified_dct(L) == oracle::orbit_type_cyclic(rep, lim))) oracle_match = false;
        }
        std::string tag = to_str(pow_int(p, n));
        report("classes mod " + tag + ": sizes sum to |GL2|", total == gl2_order(p, n));
        report("classes mod " + tag + ": classify(representative) round-trip", round_trip);
        report("classes mod " + tag + ": closed-form type = orbit type", oracle_match);
    }

    for (auto [pp, nn] : {std::pair<int, int>{3, 2}, {3, 3}}) {
        Int p(pp);
        int n = nn;
        Int m = pow_int(p, n);
        bool ok = true;
        for (Int alpha = 1; alpha < m && ok; ++alpha) {
            if (mod_reduce(alpha, p) == 0) continue;
            for (int eps : {1, -1})
                for (int b1 = 0; b1 <= n && ok; ++b1)
                    for (int b2 = b1; b2 <= n; ++b2) {
                        DCType closed = mult_dct(p, n, alpha, eps, b1, b2);
                        DCType orb = oracle::orbit_type(oracle::mult_d_gens(p, n, alpha, eps, b1),
                                                        oracle::mult_i_gens(p, n, b2),
                                                        m.get_ui(), lim);
                        if (!(closed == orb)) {
                            ok = false;
                            break;
                        }
                    }
        }
        report("mult pair types mod " + to_str(m) + " = orbit types", ok);
    }

    for (auto [pp, nn] : {std::pair<int, int>{3, 2}, {5, 2}, {3, 3}}) {
        Int p(pp);
        int n = nn;
        Int m = pow_int(p, n);
        bool ok = true;
        for (Int alpha = 1; alpha < m; ++alpha) {
            if (mod_reduce(alpha, p) == 0) continue;
            DCType closed = ord_dct(p, n, alpha);
            DCType orb = oracle::orbit_type(oracle::ord_d_gens(p, n, alpha),
                                            oracle::ord_i_gens(p, n), m.get_ui(), lim);
            if (!(closed == orb)) {
                ok = false;
                break;
            }
        }
        report("ordinary pair types mod " + to_str(m) + " = orbit types", ok);
    }

    for (auto [pp, nn] : {std::pair<int, int>{3, 1}, {5, 1}, {7, 1}, {3, 2}}) {
        Int p(pp);
        int n = nn;
        auto part = oracle::brute_conjugacy_partition(p, n, lim);
        auto labels = enumerate_classes(p, n);
        bool ok = part.reps.size() == labels.size();
        if (ok)
            for (size_t i = 0; i < part.reps.size(); ++i) {
                ClassLabel L = classify(part.reps[i], p, n);
                if (class_size(L) != part.sizes[i]) ok = false;
            }
        report("brute-force partition mod " + to_str(pow_int(p, n)) + " matches the taxonomy", ok);
    }

    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"double coset types, Frobenius data and zeta coefficients for GL2 torsion fields"};
    app.require_subcommand(1);
    GlobalOpts g;
    app.add_flag("--json", g.json, "machine-readable output")->envname("GL2DC_JSON");
    app.add_option("--seed", g.seed, "seed for randomized searches")->envname("GL2DC_SEED");
    app.add_option("--threads", g.threads, "worker threads (default: machine parallelism)")
        ->envname("GL2DC_THREADS");
    app.add_option("--cache", g.cache_path, "Frobenius data cache file")->envname("GL2DC_CACHE");
    app.add_flag("--assume-maximal-image", g.assume_maximal_image,
                 "acknowledge the unchecked image hypotheses")
        ->envname("GL2DC_ASSUME_MAXIMAL_IMAGE");
    app.add_option("--max-q", g.max_q, "naive point counting bound")->envname("GL2DC_MAX_Q");
    app.add_option("--verify-budget", g.verify_budget, "step guard for verify")
        ->envname("GL2DC_VERIFY_BUDGET");
    app.add_option("--decimals", g.decimals, "decimal places for percentages")
        ->envname("GL2DC_DECIMALS");

    // std-dct p n k0 [k1] --a A [--b B]
    auto* c_std = app.add_subcommand("std-dct", "standard double coset type DCT(k;a[,b])");
    std::string s_p;
    int s_n = 1, s_a = 0, s_b = -1;
    std::vector<uint64_t> s_ks;
    c_std->add_option("p", s_p)->required();
    c_std->add_option("n", s_n)->required();
    c_std->add_option("k", s_ks, "one or two orders coprime to p")->required()->expected(1, 2);
    c_std->add_option("-a,--a", s_a)->required();
    c_std->add_option("-b,--b", s_b);

    auto* c_dct = app.add_subcommand("dct", "unramified type of a matrix mod p^n");
    std::string d_p, d_mat;
    int d_n = 1;
    c_dct->add_option("p", d_p)->required();
    c_dct->add_option("n", d_n)->required();
    c_dct->add_option("matrix", d_mat, "[[a,b],[c,d]]")->required();

    auto* c_dctn = app.add_subcommand("dct-n", "unramified type of a matrix mod odd N");
    std::string dn_N, dn_mat;
    c_dctn->add_option("N", dn_N)->required();
    c_dctn->add_option("matrix", dn_mat)->required();

    auto* c_mult = app.add_subcommand("mult-dct", "multiplicative pair type");
    std::string m_p, m_alpha;
    int m_n = 1, m_eps = 1, m_b1 = 0, m_b2 = 0;
    c_mult->add_option("p", m_p)->required();
    c_mult->add_option("n", m_n)->required();
    c_mult->add_option("alpha", m_alpha)->required();
    c_mult->add_option("eps", m_eps)->required();
    c_mult->add_option("b1", m_b1)->required();
    c_mult->add_option("b2", m_b2)->required();

    auto* c_ord = app.add_subcommand("ord-dct", "good-ordinary pair type");
    std::string o_p, o_alpha;
    int o_n = 1;
    c_ord->add_option("p", o_p)->required();
    c_ord->add_option("n", o_n)->required();
    c_ord->add_option("alpha", o_alpha)->required();

    auto* c_cls = app.add_subcommand("classify", "conjugacy class of a matrix mod p^n");
    std::string cl_p, cl_mat;
    int cl_n = 1;
    c_cls->add_option("p", cl_p)->required();
    c_cls->add_option("n", cl_n)->required();
    c_cls->add_option("matrix", cl_mat)->required();

    auto* c_frob = app.add_subcommand("frob", "Frobenius class and matrix data at a good prime");
    std::string f_curve, f_q, f_N = "0";
    bool f_full = false;
    c_frob->add_option("curve", f_curve)->required();
    c_frob->add_option("q", f_q)->required();
    c_frob->add_option("--mod", f_N, "reduce mod N and print class/type");
    c_frob->add_flag("--full-delta", f_full, "compute Delta_q, b_q and the integral matrix");

    auto* c_tate = app.add_subcommand("tate-period", "multiplicative Tate period at a bad prime");
    std::string t_curve, t_q;
    int t_prec = 25;
    c_tate->add_option("curve", t_curve)->required();
    c_tate->add_option("q", t_q)->required();
    c_tate->add_option("--precision", t_prec, "absolute q-adic precision");

    auto* c_dist = app.add_subcommand("dist", "distribution of factorization types mod N");
    std::string di_N;
    bool di_csv = false;
    c_dist->add_option("N", di_N)->required();
    c_dist->add_flag("--csv", di_csv);

    auto* c_mindeg = app.add_subcommand("min-degrees", "minimal residual degree densities mod N");
    std::string md_N;
    bool md_csv = false;
    c_mindeg->add_option("N", md_N)->required();
    c_mindeg->add_flag("--csv", md_csv);

    auto* c_zeta = app.add_subcommand("zeta", "ideal-norm counts z_n for A <= n <= B");
    std::string z_curve, z_N, z_A, z_B;
    bool z_csv = false;
    c_zeta->add_option("curve", z_curve)->required();
    c_zeta->add_option("N", z_N)->required();
    c_zeta->add_option("A", z_A)->required();
    c_zeta->add_option("B", z_B)->required();
    c_zeta->add_flag("--csv", z_csv);

    auto* c_report = app.add_subcommand("report", "per-prime factorization report");
    std::string r_curve, r_N, r_q;
    int r_order = 3;
    c_report->add_option("curve", r_curve)->required();
    c_report->add_option("N", r_N)->required();
    c_report->add_option("q", r_q)->required();
    c_report->add_option("--order", r_order, "Euler expansion order");

    auto* c_verify = app.add_subcommand("verify", "run the brute-force oracle equivalence suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }

    try {
        if (c_std->parsed()) {
            auto [p, n] = parse_pn(s_p, s_n);
            int b = s_b < 0 ? s_a : s_b;
            DCType t = s_ks.size() == 1 ? std_dct(p, n, s_ks[0], s_a, b)
                                        : std_dct2(p, n, s_ks[0], s_ks[1], s_a, b);
            print_type(t, g);
        } else if (c_dct->parsed()) {
            auto [p, n] = parse_pn(d_p, d_n);
            Mat2 gmat = parse_mat2(d_mat, pow_int(p, n));
            print_type(unramified_dct(gmat, p, n), g);
        } else if (c_dctn->parsed()) {
            Int N(dn_N);
            Mat2 gmat = parse_mat2(dn_mat, N);
            print_type(unramified_dct_N(gmat), g);
        } else if (c_mult->parsed()) {
            auto [p, n] = parse_pn(m_p, m_n);
            print_type(mult_dct(p, n, Int(m_alpha), m_eps, m_b1, m_b2), g);
        } else if (c_ord->parsed()) {
            auto [p, n] = parse_pn(o_p, o_n);
            print_type(ord_dct(p, n, Int(o_alpha)), g);
        } else if (c_cls->parsed()) {
            auto [p, n] = parse_pn(cl_p, cl_n);
            ClassLabel L = classify(parse_mat2(cl_mat, pow_int(p, n)), p, n);
            if (g.json)
                std::cout << "{\"label\":" << L.json() << ",\"size\":" << class_size(L)
                          << ",\"representative\":\"" << representative(L).to_string() << "\"}\n";
            else
                std::cout << L.to_string() << "  (class size " << class_size(L) << ")\n";
        } else if (c_frob->parsed()) {
            CurveQ E = CurveQ::parse(f_curve).minimal_model();
            Int q(f_q);
            EllipticOptions eo;
            eo.seed = g.seed;
            eo.max_q = g.max_q;
            FrobeniusCache cache(g.cache_path, E.label());
            Int a = count_points(E, q, eo).second;
            std::cout << "a_q = " << a << "\n";
            if (f_full) {
                DeltaData dd = delta_q(E, q, eo);
                std::cout << "Delta_q = " << dd.delta_q << ", b_q = " << dd.b_q
                          << ", delta_q parity = " << dd.delta01 << "\n";
                Int big = abs(4 * dd.delta_q * dd.b_q * dd.b_q) + abs(dd.a_q) + 1;
                Mat2 M = duke_toth_matrix(E, q, big, eo);
                Int h = big / 2;
                auto ctr = [&](const Int& x) { return x > h ? x - big : x; };
                std::cout << "Frobenius matrix = [[" << ctr(M.a) << "," << ctr(M.b) << "],["
                          << ctr(M.c) << "," << ctr(M.d) << "]]\n";
                if (!g.cache_path.empty()) {
                    FrobeniusData rec;
                    rec.q = q;
                    rec.a_q = a;
                    for (auto& [ell, e] : factor(dd.b_q))
                        rec.mu[ell.get_ui()] = e;
                    rec.delta_q = dd.delta_q;
                    rec.b_q = dd.b_q;
                    rec.delta01 = dd.delta01;
                    cache.store(rec);
                }
            }
            if (Int(f_N) != 0) {
                Int N(f_N);
                DCType acc = tensor_identity();
                for (const ClassLabel& L : frobenius_class_N(E, q, N, eo)) {
                    std::cout << "class " << L.to_string() << "\n";
                    acc = tensor(acc, unramified_dct(L));
                }
                std::cout << "type mod " << N << ": " << (g.json ? acc.json() : acc.to_string())
                          << "\n";
            }
        } else if (c_tate->parsed()) {
            CurveQ E = CurveQ::parse(t_curve).minimal_model();
            TatePeriod tp = tate_period(E, Int(t_q), t_prec);
            std::cout << "v(theta) = " << tp.m << "\n"
                      << "theta = " << tp.theta.to_string() << "\n";
        } else if (c_dist->parsed()) {
            TypeDistribution dist = distribution(Int(di_N));
            if (di_csv) {
                std::cout << "type,mass,density\n";
                for (auto& [t, m] : dist.entries)
                    std::cout << "\"" << t.to_string() << "\"," << m << "," << m << "/"
                              << dist.group_order << "\n";
            } else {
                std::cout << "|GL2(Z/" << di_N << ")| = " << dist.group_order << ", "
                          << dist.entries.size() << " types\n";
                for (auto& [t, m] : dist.entries)
                    std::cout << m << "  " << t.to_string() << "\n";
            }
        } else if (c_mindeg->parsed()) {
            Int N(md_N);
            auto rep = min_degree_report(N);
            Int G = gl2_order_N(N);
            if (md_csv) std::cout << "degree,mass,density\n";
            for (auto& [f, mass] : rep) {
                if (md_csv)
                    std::cout << f << "," << mass << "," << mass << "/" << G << "\n";
                else
                    std::cout << f << "\t" << density_percent(mass, G, g.decimals) << "\n";
            }
        } else if (c_zeta->parsed()) {
            CurveQ E = CurveQ::parse(z_curve);
            ZetaTable t = zeta_coefficients(E, Int(z_N), Int(z_A), Int(z_B), zeta_opts(g));
            if (z_csv) {
                std::cout << "n,z_n\n";
                for (auto& [n, z] : t.coeffs) std::cout << n << "," << z << "\n";
            } else if (g.json) {
                std::cout << "{";
                bool first = true;
                for (auto& [n, z] : t.coeffs) {
                    if (!first) std::cout << ",";
                    std::cout << "\"" << n << "\":" << z;
                    first = false;
                }
                std::cout << "}\n";
            } else {
                std::cout << "{";
                bool first = true;
                for (auto& [n, z] : t.coeffs) {
                    if (!first) std::cout << ", ";
                    std::cout << n << ":" << z;
                    first = false;
                }
                std::cout << "}\n";
            }
        } else if (c_report->parsed()) {
            CurveQ E = CurveQ::parse(r_curve);
            PerPrimeReport rep = per_prime_report(E, Int(r_N), Int(r_q), r_order, zeta_opts(g));
            if (g.json) {
                std::cout << "{\"q\":" << rep.q << ",\"type\":" << rep.type.json()
                          << ",\"min_degree\":" << rep.min_degree << ",\"euler\":[";
                for (size_t i = 0; i < rep.euler.size(); ++i)
                    std::cout << (i ? "," : "") << rep.euler[i];
                std::cout << "]}\n";
            } else {
                std::cout << "q = " << rep.q << "\n"
                          << "type: " << rep.type.to_string() << "\n"
                          << "minimal residual degree: " << rep.min_degree << "\n";
                for (size_t k = 1; k < rep.euler.size(); ++k)
                    std::cout << "z(q^" << k << ") = " << rep.euler[k] << "\n";
            }
        } else if (c_verify->parsed()) {
            return run_verify(g);
        }
    } catch (const hypothesis_error& e) {
        std::cerr << "hypothesis violation: " << e.what() << "\n";
        return 2;
    } catch (const budget_error& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
