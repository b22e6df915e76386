#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "mcd/diagram.hpp"

namespace mcd {

// Integer Laurent polynomial in A, kept in canonical form (sorted exponents,
// no zero coefficients).
struct LaurentPoly {
    std::map<int, long long> coeffs;

    void add(int exp, long long c);
    LaurentPoly times_power(int exp) const;      // multiply by A^exp
    LaurentPoly mirror() const;                  // A -> A^-1
    bool operator==(const LaurentPoly&) const = default;
    std::string str() const;                     // ascending exponents
};

struct BracketPolynomial {
    LaurentPoly bracket;
    int writhe = 0;

    // (-A^3)^(-writhe) * bracket
    LaurentPoly normalized() const;
};

// Maximum standard crossings the naive 2^c state sum will attempt. MCD_GUARD
// in the environment overrides it.
int bracket_guard();

// Replace every multiplicity-m crossing by the half-twist bundle of C(m,2)
// pairwise crossings; over/under of each pair follows the levels. Boundary
// slots attach in the original rotation order.
Diagram expand_to_standard(const Diagram& d);

// Full 2^c state sum with loop value -A^2 - A^-2; bracket of the crossingless
// unknot is 1. Requires every multiplicity to be 2.
BracketPolynomial kauffman_bracket(const Diagram& standard);

struct Certificate {
    enum class Status { pass, fail, unchecked };
    Status status = Status::unchecked;
    std::string detail;

    bool passed() const { return status == Status::pass; }
    bool failed() const { return status == Status::fail; }
};

// Compares writhe-normalized brackets of the two diagrams' expansions.
// Expansions past the guard yield status unchecked, never pass.
Certificate certify_rewrite(const Diagram& before, const Diagram& after);

}  // namespace mcd
