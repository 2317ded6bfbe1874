#pragma once
// Builders for the named cycles: z1, z2, z3, z4 and the inductive families
// z3k(k) = [z3|z3k(k-1)] and z3k1(k) = [z3|z3k1(k-1)] with z3k1(0) = z1.

#include <string>

#include "sharbly/core.hpp"

namespace sharbly {

Chain z1();
Chain z2();
Chain z3();
Chain z4();
Chain z3k(int k);    // n = 3k, 6k columns, k >= 1; z3k(1) = z3
Chain z3k1(int k);   // n = 3k+1, 6k+1 columns, k >= 1; z3k1(1) = z4

// accepts z1, z2, z3, z4, z3k(<k>), z3k1(<k>)
Chain build_named(const std::string& name);

}  // namespace sharbly
