#include "gl2dc/zeta.hpp"

#include <algorithm>
#include <atomic>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

namespace gl2dc {

namespace {

struct Ctx {
    CurveQ E;  // minimal model
    Int N;
    std::vector<std::pair<Int, int>> n_factors;
    ZetaOptions opt;
    std::shared_ptr<FrobeniusCache> cache;
};

Ctx make_ctx(const CurveQ& E, const Int& N, const ZetaOptions& opt) {
    Ctx ctx{E.minimal_model(), N, factor(N), opt, nullptr};
    ctx.cache = std::make_shared<FrobeniusCache>(opt.cache_path, ctx.E.label());
    return ctx;
}

// a_q and the exact scalar depths v_ell(b_q) for the primes dividing N,
// consulting and updating the cache.
FrobeniusData frobenius_data(const Ctx& ctx, const Int& q) {
    FrobeniusData d;
    bool have = false;
    if (auto hit = ctx.cache->lookup(q)) {
        d = *hit;
        have = true;
    } else {
        d.q = q;
        d.a_q = count_points(ctx.E, q, ctx.opt.elliptic).second;
    }
    bool dirty = !have;
    Int disc = d.a_q * d.a_q - 4 * q;
    for (auto& [p, e] : ctx.n_factors) {
        (void)e;
        if (p == q) continue;
        unsigned long pl = p.get_ui();
        if (d.mu.count(pl)) continue;
        long vd = val_cap(disc, p, 64);
        int mu = vd >= 2 ? frobenius_mu(ctx.E, q, p, static_cast<int>(vd / 2), ctx.opt.elliptic) : 0;
        d.mu[pl] = mu;
        dirty = true;
    }
    if (dirty) ctx.cache->store(d);
    return d;
}

DCType type_of_prime(const Ctx& ctx, const Int& q) {
    const CurveQ& E = ctx.E;
    if (mod_reduce(ctx.N, q) == 0) {
        // q = p_i | N: good ordinary pair type at p_i, Frobenius elsewhere
        DCType acc = tensor_identity();
        for (auto& [p, n] : ctx.n_factors) {
            if (p == q) {
                PValued alpha = unit_root(E, p, n, ctx.opt.elliptic);
                acc = tensor(acc, ord_dct(p, n, alpha.value));
            } else {
                FrobeniusData d = frobenius_data(ctx, q);
                int mu = std::min(d.mu.at(p.get_ui()), n);
                acc = tensor(acc, unramified_dct(classify_from_chi(d.a_q, q, mu, p, n)));
            }
        }
        return acc;
    }
    if (mod_reduce(E.disc, q) == 0) {
        ReductionType red = reduction_type(E, q);
        if (red == ReductionType::Additive)
            throw hypothesis_error("factorization_type: additive reduction at " + to_str(q));
        DCType acc = tensor_identity();
        for (auto& [p, n] : ctx.n_factors) {
            MultParams mp = mult_params(E, q, p, n);
            Int alpha = mod_reduce(Int(mp.eps) * q, pow_int(p, n));
            acc = tensor(acc, mult_dct(p, n, alpha, mp.eps, mp.b1, mp.b2));
        }
        return acc;
    }
    // unramified
    DCType acc = tensor_identity();
    FrobeniusData d = frobenius_data(ctx, q);
    for (auto& [p, n] : ctx.n_factors) {
        int mu = std::min(d.mu.at(p.get_ui()), n);
        acc = tensor(acc, unramified_dct(classify_from_chi(d.a_q, q, mu, p, n)));
    }
    return acc;
}

}  // namespace

void check_hypotheses(const CurveQ& E, const Int& N, const ZetaOptions& opt) {
    if (N < 3 || mod_reduce(N, 2) == 0) throw hypothesis_error("check_hypotheses: N must be odd and > 1");
    CurveQ Em = E.minimal_model();
    if (!is_semistable(Em)) throw hypothesis_error("check_hypotheses: curve is not semistable");
    for (auto& [p, e] : factor(N)) {
        (void)e;
        if (mod_reduce(Em.disc, p) == 0)
            throw hypothesis_error("check_hypotheses: bad reduction at " + to_str(p) + " | N");
        Int a = count_points(Em, p, opt.elliptic).second;
        if (mod_reduce(a, p) == 0)
            throw hypothesis_error("check_hypotheses: reduction at " + to_str(p) + " is not ordinary");
    }
    if (!opt.assume_maximal_image && opt.progress)
        opt.progress(
            "note: maximal mod-N image and absence of companion forms are assumed, not checked "
            "(pass --assume-maximal-image to acknowledge)");
}

DCType factorization_type(const CurveQ& E, const Int& N, const Int& q, const ZetaOptions& opt) {
    check_hypotheses(E, N, opt);
    Ctx ctx = make_ctx(E, N, opt);
    return type_of_prime(ctx, q);
}

std::vector<Int> euler_factor(const DCType& d, int order) {
    std::vector<Int> out(order + 1, 0);
    out[0] = 1;
    for (auto& t : d.terms) {
        uint64_t f = t.b / t.c;
        if (f > static_cast<uint64_t>(order)) continue;
        // multiply by (1 - x^f)^(-a): coefficients C(a+k-1, k) at x^(f k)
        std::vector<Int> nxt(order + 1, 0);
        for (int base = 0; base <= order; ++base) {
            if (out[base] == 0) continue;
            for (uint64_t k = 0; base + f * k <= static_cast<uint64_t>(order); ++k) {
                Int binom, top = t.count + k - 1;
                mpz_bin_ui(binom.get_mpz_t(), top.get_mpz_t(), k);
                nxt[base + f * k] += out[base] * binom;
            }
        }
        out = std::move(nxt);
    }
    return out;
}

ZetaTable zeta_coefficients(const CurveQ& E, const Int& N, const Int& A, const Int& B,
                            const ZetaOptions& opt) {
    if (A < 1 || B < A) throw std::invalid_argument("zeta_coefficients: need 1 <= A <= B");
    check_hypotheses(E, N, opt);
    Ctx ctx = make_ctx(E, N, opt);
    if (!B.fits_ulong_p()) throw budget_error("zeta_coefficients: bound too large");
    uint64_t bound = B.get_ui();
    std::vector<uint64_t> primes = primes_up_to(bound);

    // nonzero prime-power coefficients per prime
    std::vector<std::vector<std::pair<Int, Int>>> powers(primes.size());
    std::atomic<size_t> next{0};
    std::atomic<size_t> done{0};
    std::mutex err_mtx;
    std::exception_ptr first_error;
    int nthreads = std::max(1, opt.threads);
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= primes.size()) return;
            try {
                Int q(static_cast<unsigned long>(primes[i]));
                int T = 0;
                Int qe = 1;
                while (qe * q <= B) {
                    qe *= q;
                    ++T;
                }
                DCType t = type_of_prime(ctx, q);
                std::vector<Int> eu = euler_factor(t, T);
                for (int k = 1; k <= T; ++k)
                    if (eu[k] != 0) powers[i].emplace_back(pow_int(q, k), eu[k]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mtx);
                if (!first_error) first_error = std::current_exception();
                return;
            }
            size_t d = done.fetch_add(1) + 1;
            if (opt.progress && d % 200 == 0)
                opt.progress("primes processed: " + std::to_string(d) + "/" +
                             std::to_string(primes.size()));
        }
    };
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    // multiplicative combination of the sparse prime-power tables
    std::vector<size_t> live;
    for (size_t i = 0; i < primes.size(); ++i)
        if (!powers[i].empty()) live.push_back(i);
    ZetaTable table;
    table.lower = A;
    table.upper = B;
    std::function<void(size_t, const Int&, const Int&)> rec = [&](size_t idx, const Int& n,
                                                                  const Int& z) {
        if (idx == live.size()) {
            if (n >= A && n <= B) table.coeffs[n] += z;
            return;
        }
        rec(idx + 1, n, z);
        for (auto& [qe, c] : powers[live[idx]]) {
            Int nn = n * qe;
            if (nn > B) break;
            rec(idx + 1, nn, z * c);
        }
    };
    rec(0, 1, 1);
    return table;
}

TypeDistribution distribution(const Int& N) {
    if (N < 3 || mod_reduce(N, 2) == 0) throw std::invalid_argument("distribution: N must be odd > 1");
    // per prime power: aggregate class mass by type
    using Agg = std::map<std::string, std::pair<DCType, Int>>;
    Agg acc;
    acc["1 x 1"] = {tensor_identity(), 1};
    Int group_order = 1;
    for (auto& [p, n] : factor(N)) {
        Agg local;
        enumerate_classes(p, n, [&](const ClassLabel& L) {
            DCType t = unramified_dct(L);
            auto& slot = local[t.to_string()];
            slot.first = t;
            slot.second += class_size(L);
        });
        group_order *= gl2_order(p, n);
        Agg merged;
        for (auto& [k1, v1] : acc)
            for (auto& [k2, v2] : local) {
                DCType t = tensor(v1.first, v2.first);
                auto& slot = merged[t.to_string()];
                slot.first = t;
                slot.second += v1.second * v2.second;
            }
        acc = std::move(merged);
    }
    TypeDistribution out;
    out.group_order = group_order;
    for (auto& [k, v] : acc) out.entries.emplace_back(v.first, v.second);
    std::sort(out.entries.begin(), out.entries.end(), [](const auto& x, const auto& y) {
        if (x.second != y.second) return y.second < x.second;
        return x.first.to_string() < y.first.to_string();
    });
    Int total = 0;
    for (auto& [t, m] : out.entries) total += m;
    if (total != group_order) throw std::logic_error("distribution: masses do not sum to |G|");
    return out;
}

std::map<uint64_t, Int> min_degree_report(const Int& N) {
    TypeDistribution dist = distribution(N);
    std::map<uint64_t, Int> out;
    for (auto& [t, mass] : dist.entries) {
        uint64_t best = 0;
        for (auto& term : t.terms) {
            uint64_t f = term.b / term.c;
            if (best == 0 || f < best) best = f;
        }
        out[best] += mass;
    }
    return out;
}

std::string density_percent(const Int& mass, const Int& group_order, int decimals) {
    Int scale = pow_int(10, decimals);
    Int num = mass * 100 * scale;
    Int rounded = (num + group_order / 2) / group_order;
    Int whole = rounded / scale, frac = rounded % scale;
    std::ostringstream os;
    os << whole << ".";
    std::string fs = frac.get_str();
    os << std::string(decimals - fs.size(), '0') << fs << "%";
    return os.str();
}

PerPrimeReport per_prime_report(const CurveQ& E, const Int& N, const Int& q, int order,
                                const ZetaOptions& opt) {
    PerPrimeReport out;
    out.q = q;
    out.type = factorization_type(E, N, q, opt);
    out.min_degree = 0;
    for (auto& term : out.type.terms) {
        uint64_t f = term.b / term.c;
        if (out.min_degree == 0 || f < out.min_degree) out.min_degree = f;
    }
    out.euler = euler_factor(out.type, order);
    return out;
}

}  // namespace gl2dc
