#include "gl2dc/conjugacy.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <sstream>

#include "gl2dc/padic.hpp"

namespace gl2dc {

namespace {

const char* kind_tag(ClassKind k) {
    switch (k) {
        case ClassKind::I: return "I";
        case ClassKind::IPrimeMuNu: return "I'";
        case ClassKind::IPrimeMu: return "I'";
        case ClassKind::IMinus: return "I-";
        case ClassKind::IPlus: return "I+";
        case ClassKind::II: return "II";
        case ClassKind::III: return "III";
        case ClassKind::IV: return "IV";
    }
    return "?";
}

void validate(const ClassLabel& L) {
    const Int& p = L.p;
    int n = L.n;
    if (n < 1 || p < 3 || !is_prime(p)) throw std::invalid_argument("ClassLabel: bad p^n");
    Int m = L.modulus();
    auto unit = [&](const Int& x, const Int& mod) { return mod_reduce(x, p) != 0 && x >= 0 && x < mod; };
    switch (L.kind) {
        case ClassKind::I:
            if (!unit(L.alpha, m)) throw std::invalid_argument("I: alpha must be a unit mod p^n");
            break;
        case ClassKind::IPrimeMuNu:
            if (!(1 <= L.mu && L.mu < L.nu && L.nu < n)) throw std::invalid_argument("I'_{mu,nu}: need 1 <= mu < nu < n");
            if (!unit(L.alpha, m)) throw std::invalid_argument("I'_{mu,nu}: alpha must be a unit");
            if (!unit(L.beta, L.beta_modulus())) throw std::invalid_argument("I'_{mu,nu}: beta must be a unit mod p^(n-nu)");
            break;
        case ClassKind::IPrimeMu:
            if (!(1 <= L.mu && L.mu < n)) throw std::invalid_argument("I'_mu: need 1 <= mu < n");
            if (!unit(L.alpha, m)) throw std::invalid_argument("I'_mu: alpha must be a unit");
            break;
        case ClassKind::IMinus:
        case ClassKind::IPlus: {
            if (!(1 <= L.mu && L.mu < n)) throw std::invalid_argument("I+-: need 1 <= mu < n");
            if (!unit(L.alpha, m)) throw std::invalid_argument("I+-: alpha must be a unit");
            if (!unit(L.beta, L.beta_modulus())) throw std::invalid_argument("I+-: beta must be a unit mod p^(n-mu)");
            int sign = legendre(L.beta, p);
            if (sign != (L.kind == ClassKind::IPlus ? 1 : -1))
                throw std::invalid_argument("I+-: beta square class does not match the sign");
            break;
        }
        case ClassKind::II:
            if (!unit(L.alpha, m)) throw std::invalid_argument("II: alpha must be a unit");
            if (L.beta < 0 || L.beta >= L.beta_modulus()) throw std::invalid_argument("II: beta out of range");
            break;
        case ClassKind::III:
            if (!unit(L.alpha, m) || !unit(L.beta, m)) throw std::invalid_argument("III: alpha, beta must be units");
            if (mod_reduce(L.alpha - L.beta, p) == 0) throw std::invalid_argument("III: alpha = beta mod p");
            break;
        case ClassKind::IV: {
            if (!unit(L.alpha, m)) throw std::invalid_argument("IV: alpha must be a unit");
            if (L.beta < 0 || L.beta >= m) throw std::invalid_argument("IV: beta out of range");
            Int disc = mod_reduce(L.beta * L.beta + 4 * L.alpha, m);
            if (legendre(disc, p) != -1)
                throw std::invalid_argument("IV: beta^2+4alpha must be a non-square unit");
            break;
        }
    }
}

}  // namespace

Int ClassLabel::beta_modulus() const {
    switch (kind) {
        case ClassKind::IPrimeMuNu: return pow_int(p, n - nu);
        case ClassKind::IMinus:
        case ClassKind::IPlus: return pow_int(p, n - mu);
        case ClassKind::II: return pow_int(p, n - 1);
        case ClassKind::III:
        case ClassKind::IV: return pow_int(p, n);
        default: return 1;
    }
}

std::string ClassLabel::to_string() const {
    std::ostringstream os;
    os << kind_tag(kind);
    if (kind == ClassKind::IPrimeMuNu)
        os << "_{" << mu << "," << nu << "}";
    else if (kind == ClassKind::IPrimeMu || kind == ClassKind::IMinus || kind == ClassKind::IPlus)
        os << "_{" << mu << "}";
    os << "(" << alpha;
    if (kind != ClassKind::I && kind != ClassKind::IPrimeMu) os << "," << beta;
    os << ") mod " << modulus();
    return os.str();
}

std::string ClassLabel::json() const {
    std::ostringstream os;
    os << "{\"kind\":\"" << kind_tag(kind);
    if (kind == ClassKind::IPrimeMuNu) os << "mn";
    if (kind == ClassKind::IPrimeMu) os << "m";
    os << "\",\"p\":" << p << ",\"n\":" << n << ",\"alpha\":" << alpha;
    if (kind != ClassKind::I && kind != ClassKind::IPrimeMu) os << ",\"beta\":" << beta;
    if (kind == ClassKind::IPrimeMuNu || kind == ClassKind::IPrimeMu || kind == ClassKind::IMinus ||
        kind == ClassKind::IPlus)
        os << ",\"mu\":" << mu;
    if (kind == ClassKind::IPrimeMuNu) os << ",\"nu\":" << nu;
    os << "}";
    return os.str();
}

ClassLabel parse_class_label(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    auto fail = [&] { throw std::invalid_argument("parse_class_label: cannot parse: " + text); };
    ClassLabel L;
    size_t i = 0;
    bool prime_family = false;
    auto starts = [&](const char* lit) {
        size_t len = strlen(lit);
        if (s.compare(i, len, lit) == 0) {
            i += len;
            return true;
        }
        return false;
    };
    if (starts("III")) L.kind = ClassKind::III;
    else if (starts("II")) L.kind = ClassKind::II;
    else if (starts("IV")) L.kind = ClassKind::IV;
    else if (starts("I'")) prime_family = true;
    else if (starts("I+")) L.kind = ClassKind::IPlus;
    else if (starts("I-")) L.kind = ClassKind::IMinus;
    else if (starts("I")) L.kind = ClassKind::I;
    else fail();

    auto number = [&]() -> Int {
        size_t j = i;
        if (j < s.size() && (s[j] == '-' || s[j] == '+')) ++j;
        size_t k = j;
        while (k < s.size() && isdigit(static_cast<unsigned char>(s[k]))) ++k;
        if (k == j) fail();
        Int v(s.substr(i, k - i));
        i = k;
        return v;
    };

    std::vector<long> subs;
    if (prime_family || L.kind == ClassKind::IPlus || L.kind == ClassKind::IMinus) {
        if (!starts("_")) fail();
        bool braced = starts("{");
        subs.push_back(number().get_si());
        if (braced && starts(",")) subs.push_back(number().get_si());
        if (braced && !starts("}")) fail();
    }
    if (!starts("(")) fail();
    std::vector<Int> params;
    params.push_back(number());
    while (starts(",")) params.push_back(number());
    if (!starts(")")) fail();
    if (!starts("mod")) fail();
    Int m = number();
    if (i != s.size()) fail();

    auto fac = factor(m);
    if (fac.size() != 1) throw std::invalid_argument("parse_class_label: modulus must be a prime power");
    L.p = fac[0].first;
    L.n = fac[0].second;
    if (prime_family) {
        if (subs.size() == 2) {
            L.kind = ClassKind::IPrimeMuNu;
            L.mu = static_cast<int>(subs[0]);
            L.nu = static_cast<int>(subs[1]);
        } else {
            L.kind = ClassKind::IPrimeMu;
            L.mu = static_cast<int>(subs[0]);
        }
    } else if (!subs.empty()) {
        L.mu = static_cast<int>(subs[0]);
    }
    L.alpha = mod_reduce(params[0], L.modulus());
    if (params.size() > 1) L.beta = mod_reduce(params[1], L.beta_modulus());
    validate(L);
    return L;
}

ClassLabel classify_from_chi(const Int& sigma, const Int& tau, long mu, const Int& p, int n) {
    ClassLabel L;
    L.p = p;
    L.n = n;
    Int m = pow_int(p, n);
    Int inv2 = inv_mod(2, m);
    if (mu >= n) {
        L.kind = ClassKind::I;
        L.alpha = mod_reduce(sigma * inv2, m);
        return L;
    }
    Int delta = sigma * sigma - 4 * tau;
    if (mu == 0) {
        long vd = val_cap(delta, p, n);
        if (vd >= 1) {
            // II(sigma/2, Delta/4p), beta in Z/p^(n-1)
            L.kind = ClassKind::II;
            L.alpha = mod_reduce(sigma * inv2, m);
            Int mb = pow_int(p, n - 1);
            if (n == 1) {
                L.beta = 0;
            } else {
                Int inv4 = inv_mod(4, mb);
                L.beta = mod_reduce((delta / p) * inv4, mb);
            }
            return L;
        }
        if (legendre(delta, p) == 1) {
            auto r = sqrt_mod(PValued(delta, p, n));
            if (!r) throw std::logic_error("classify: square unit without a root");
            Int x = mod_reduce((sigma - r->value) * inv2, m);
            Int y = mod_reduce((sigma + r->value) * inv2, m);
            L.kind = ClassKind::III;
            L.alpha = std::min(x, y);
            L.beta = std::max(x, y);
            return L;
        }
        // companion form [[0, -tau],[1, sigma]]: char poly x^2 - sigma x + tau
        L.kind = ClassKind::IV;
        L.alpha = mod_reduce(-tau, m);
        L.beta = mod_reduce(sigma, m);
        return L;
    }
    // 0 < mu < n; Delta is meaningful mod p^(n+mu)
    L.alpha = mod_reduce(sigma * inv2, m);
    L.mu = static_cast<int>(mu);
    long vd = val_cap(delta, p, n + mu);
    long nu = vd - mu;
    if (nu >= n) {
        L.kind = ClassKind::IPrimeMu;
        return L;
    }
    Int mb = pow_int(p, n - nu);
    Int beta = mod_reduce((delta / pow_int(p, mu + nu)) * inv_mod(4, mb), mb);
    if (nu > mu) {
        L.kind = ClassKind::IPrimeMuNu;
        L.nu = static_cast<int>(nu);
        L.beta = beta;
        return L;
    }
    // nu == mu: sign = Legendre symbol of beta
    L.kind = legendre(beta, p) == 1 ? ClassKind::IPlus : ClassKind::IMinus;
    L.beta = beta;
    return L;
}

ClassLabel classify(const Mat2& g, const Int& p, int n) {
    if (!g.is_invertible()) throw std::invalid_argument("classify: matrix is not invertible");
    if (g.mod != pow_int(p, n)) throw std::invalid_argument("classify: modulus is not p^n");
    long mu = mu_depth(g, p, n);
    if (mu >= n) {
        ClassLabel L;
        L.p = p;
        L.n = n;
        L.kind = ClassKind::I;
        L.alpha = g.a;
        return L;
    }
    // sigma, tau from the integer lifts: sigma^2 - 4 tau = (a-d)^2 + 4bc is
    // then exact and in particular determined mod p^(n+mu), which is what the
    // nu/beta extraction needs.
    Int sigma = g.a + g.d;
    Int tau = g.a * g.d - g.b * g.c;
    return classify_from_chi(sigma, tau, mu, p, n);
}

ClassLabel classify(const Mat2& g) {
    auto fac = factor(g.mod);
    if (fac.size() != 1) throw std::invalid_argument("classify: modulus must be a prime power");
    return classify(g, fac[0].first, fac[0].second);
}

Mat2 representative(const ClassLabel& L) {
    validate(L);
    Int m = L.modulus();
    const Int& p = L.p;
    switch (L.kind) {
        case ClassKind::I: return Mat2::scalar(L.alpha, m);
        case ClassKind::IPrimeMuNu:
            return Mat2(L.alpha, L.beta * pow_int(p, L.nu), pow_int(p, L.mu), L.alpha, m);
        case ClassKind::IPrimeMu:
            return Mat2(L.alpha, 0, pow_int(p, L.mu), L.alpha, m);
        case ClassKind::IMinus:
        case ClassKind::IPlus:
            return Mat2(L.alpha, L.beta * pow_int(p, L.mu), pow_int(p, L.mu), L.alpha, m);
        case ClassKind::II: return Mat2(L.alpha, L.beta * p, 1, L.alpha, m);
        case ClassKind::III: return Mat2(L.alpha, 0, 0, L.beta, m);
        case ClassKind::IV: return Mat2(0, L.alpha, 1, L.beta, m);
    }
    throw std::logic_error("representative: unreachable");
}

Int class_size(const ClassLabel& L) {
    validate(L);
    const Int& p = L.p;
    int n = L.n;
    switch (L.kind) {
        case ClassKind::I: return 1;
        case ClassKind::IPrimeMuNu:
        case ClassKind::IPrimeMu:
            return (p * p - 1) * pow_int(p, 2 * (n - L.mu) - 2);
        case ClassKind::IMinus: return (p - 1) * pow_int(p, 2 * (n - L.mu) - 1);
        case ClassKind::IPlus: return (p + 1) * pow_int(p, 2 * (n - L.mu) - 1);
        case ClassKind::II: return (p * p - 1) * pow_int(p, 2 * n - 2);
        case ClassKind::III: return (p + 1) * pow_int(p, 2 * n - 1);
        case ClassKind::IV: return (p - 1) * pow_int(p, 2 * n - 1);
    }
    throw std::logic_error("class_size: unreachable");
}

void enumerate_classes(const Int& p, int n, const std::function<void(const ClassLabel&)>& fn) {
    Int m = pow_int(p, n);
    auto units = [&](const Int& mod) {
        std::vector<Int> us;
        for (Int r = 1; r < mod; ++r)
            if (mod_reduce(r, p) != 0) us.push_back(r);
        return us;
    };
    auto emit = [&](ClassLabel L) {
        L.p = p;
        L.n = n;
        fn(L);
    };
    std::vector<Int> um = units(m);

    for (const Int& a : um) {
        ClassLabel L;
        L.kind = ClassKind::I;
        L.alpha = a;
        emit(L);
    }
    for (int mu = 1; mu < n; ++mu)
        for (int nu = mu + 1; nu < n; ++nu)
            for (const Int& a : um)
                for (const Int& b : units(pow_int(p, n - nu))) {
                    ClassLabel L;
                    L.kind = ClassKind::IPrimeMuNu;
                    L.mu = mu;
                    L.nu = nu;
                    L.alpha = a;
                    L.beta = b;
                    emit(L);
                }
    for (int mu = 1; mu < n; ++mu)
        for (const Int& a : um) {
            ClassLabel L;
            L.kind = ClassKind::IPrimeMu;
            L.mu = mu;
            L.alpha = a;
            emit(L);
        }
    for (ClassKind k : {ClassKind::IMinus, ClassKind::IPlus}) {
        int want = k == ClassKind::IPlus ? 1 : -1;
        for (int mu = 1; mu < n; ++mu)
            for (const Int& a : um)
                for (const Int& b : units(pow_int(p, n - mu)))
                    if (legendre(b, p) == want) {
                        ClassLabel L;
                        L.kind = k;
                        L.mu = mu;
                        L.alpha = a;
                        L.beta = b;
                        emit(L);
                    }
    }
    {
        Int mb = pow_int(p, n - 1);
        for (const Int& a : um)
            for (Int b = 0; b < mb; ++b) {
                ClassLabel L;
                L.kind = ClassKind::II;
                L.alpha = a;
                L.beta = b;
                emit(L);
            }
    }
    for (const Int& a : um)
        for (const Int& b : um)
            if (b > a && mod_reduce(b - a, p) != 0) {
                ClassLabel L;
                L.kind = ClassKind::III;
                L.alpha = a;
                L.beta = b;
                emit(L);
            }
    for (const Int& a : um)
        for (Int b = 0; b < m; ++b)
            if (legendre(mod_reduce(b * b + 4 * a, m), p) == -1) {
                ClassLabel L;
                L.kind = ClassKind::IV;
                L.alpha = a;
                L.beta = b;
                emit(L);
            }
}

std::vector<ClassLabel> enumerate_classes(const Int& p, int n) {
    std::vector<ClassLabel> out;
    enumerate_classes(p, n, [&](const ClassLabel& L) { out.push_back(L); });
    return out;
}

}  // namespace gl2dc
