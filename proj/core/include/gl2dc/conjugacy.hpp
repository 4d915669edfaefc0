#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gl2dc/mat2.hpp"

namespace gl2dc {

// Conjugacy class taxonomy of GL_2(Z/p^n), p odd.
//
//   I(a)            scalar a*Id
//   I'_{mu,nu}(a,b) [[a, b p^nu],[p^mu, a]],  1 <= mu < nu < n, b unit mod p^(n-nu)
//   I'_mu(a)        [[a, 0],[p^mu, a]],       1 <= mu < n
//   I-_mu(a,b)      [[a, b p^mu],[p^mu, a]],  b a non-square unit mod p^(n-mu)
//   I+_mu(a,b)      same with b a square unit
//   II(a,b)         [[a, b p],[1, a]],        b in Z/p^(n-1)
//   III(a,b)        diag(a,b), a,b units, a != b mod p   (unordered pair)
//   IV(a,b)         [[0,a],[1,b]], x^2-bx-a irreducible with unit discriminant
enum class ClassKind { I, IPrimeMuNu, IPrimeMu, IMinus, IPlus, II, III, IV };

struct ClassLabel {
    ClassKind kind = ClassKind::I;
    Int p;
    int n = 1;
    Int alpha;      // always a residue mod p^n (for IV: the "a" slot)
    Int beta = 0;   // modulus depends on kind (see beta_modulus)
    int mu = 0, nu = 0;

    Int modulus() const { return pow_int(p, n); }
    Int beta_modulus() const;
    bool operator==(const ClassLabel&) const = default;

    std::string to_string() const;   // e.g. "I'_{1,2}(4,2) mod 27"
    std::string json() const;
};

ClassLabel parse_class_label(const std::string& text);

// Classification of an invertible matrix, following sigma/tau/Delta/mu.
// Delta is taken as (a-d)^2 + 4bc of the integer lifts, which is well
// defined mod p^(n+mu) and pins every Table parameter range.
ClassLabel classify(const Mat2& g, const Int& p, int n);
ClassLabel classify(const Mat2& g);  // factors the (prime power) modulus

// Classification from a characteristic polynomial x^2 - sigma x + tau with
// exact integer sigma, tau, plus the scalar depth mu (capped at n).
ClassLabel classify_from_chi(const Int& sigma, const Int& tau, long mu, const Int& p, int n);

// The Table 3 representative matrix of a label.
Mat2 representative(const ClassLabel& label);

// Size of the conjugacy class (Table 3 formulas).
Int class_size(const ClassLabel& label);

// Every class exactly once, in Table 3 order.
void enumerate_classes(const Int& p, int n, const std::function<void(const ClassLabel&)>& fn);
std::vector<ClassLabel> enumerate_classes(const Int& p, int n);

}  // namespace gl2dc
