#pragma once
// Pliable subsets (k-subsets spanning exactly dimension a), plying matrices,
// depth charts, and the replacement-set minima used by the vanishing degrees.

#include <vector>

#include "sharbly/linalg.hpp"

namespace sharbly {

struct PliableSubset {
  std::vector<int> indices;   // 0-based, increasing, size k
  int shuffle_sign = 1;       // parity of the shuffle moving the subset to the front
  IntMatrix gamma;            // det +1; gamma*(selected columns) in span(e_1..e_a)
};

// all k-subsets of the columns whose span has dimension exactly a; a < n
std::vector<PliableSubset> pliable_subsets(const std::vector<Col>& columns, int a, int k);

struct DepthChart {
  int p = 0;                  // size of the underlying set
  std::vector<int> values;    // values[k] = d(k) for k = 0..computed prefix
};

// d(k) = minimum span dimension over k-subsets; up_to < 0 computes all of 0..p
DepthChart depth_chart(const std::vector<Col>& a_set, int up_to = -1);

// minimum span dimension over all sets obtained from a_set by replacing i of
// its elements with i elements of b_set; requires independent spans
int min_dim_replace(const std::vector<Col>& a_set, const std::vector<Col>& b_set, int i);

// true iff every i-fold replacement, 0 < i < k, leaves dimension > a
bool key_lemma_holds(const std::vector<Col>& a_set, const std::vector<Col>& b_set,
                     int a, int k);

// maximal-by-inclusion subsets of span dimension exactly a, as index sets
std::vector<std::vector<int>> palettes(const std::vector<Col>& columns, int a);

}  // namespace sharbly
