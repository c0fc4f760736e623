#ifndef NORMTORUS_TESTS_ANCHORS_HPP
#define NORMTORUS_TESTS_ANCHORS_HPP

// Regression anchors: values fixed by the first computation and kept frozen.

namespace normtorus::testing {

// h1_defect for S_3, H_K of order 2, one factor with H_L = A_3. Agrees with
// Shapiro: H^1(A_3, T^) = H^2(Z/3, Z) and H^1(S_3, T^) = 0.
inline constexpr const char* kS3H1DefectAnchor = "Z/3";

// brauer_split(n, d), frozen from the first run
inline constexpr const char* kBrauerSplit24Anchor = "Z/2";
inline constexpr const char* kBrauerSplit36Anchor = "Z/3";

}  // namespace normtorus::testing

#endif  // NORMTORUS_TESTS_ANCHORS_HPP
