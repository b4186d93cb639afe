#ifndef COHTORUS_FRAMES_HPP_
#define COHTORUS_FRAMES_HPP_

#include <span>
#include <string_view>
#include <vector>

#include "cohtorus/hermitian.hpp"
#include "cohtorus/lattice.hpp"

namespace cohtorus {

/// G(i, j) = <points[i] | points[j]>, unit diagonal.
HermitianMatrix gram_matrix(std::span<const Complex> points);

/// Lattice points with |alpha| <= radius, minus any point within 1e-9 of a deletion.
/// Returned in canonical order (by modulus, then argument).
std::vector<Complex> lattice_points_within(const LatticeBasis& basis, double radius,
                                           std::span<const Complex> deletions = {});

/// sum_m f(alpha_m) f(alpha_m)^H over the given points, f = fock_displacement(., n).
///
/// The points are put in canonical order and summed pairwise, so the result
/// does not depend on how the caller enumerated them.
HermitianMatrix frame_operator(std::span<const Complex> points, int n);

/// Frame operator of the lattice points within `radius`. Throws EmptyLattice
/// if no point survives.
HermitianMatrix frame_operator(const LatticeBasis& basis, int n, double radius,
                               std::span<const Complex> deletions = {});

/// sqrt(2N) + 3: the phase-space reach of the first N number states plus margin.
double matched_radius(int n);

enum class RankVerdict { FullRank, RankDeficient };

std::string_view to_string(RankVerdict verdict);

struct CompletenessReport {
  LatticeBasis lattice;
  std::vector<int> truncation_sizes;
  std::vector<double> min_eigs;
  std::vector<double> max_eigs;
  std::vector<Complex> deleted_points;
  RankVerdict verdict = RankVerdict::FullRank;
  double rank_tolerance = 1e-8;
  Eigen::VectorXd final_spectrum;  // at the largest truncation
};

/// Frame-operator spectra at each truncation with the matched radius; the
/// verdict is FullRank iff lambda_min > rank_tolerance * lambda_max at the
/// largest truncation. This is a finite-size diagnostic.
CompletenessReport completeness_diagnostic(const LatticeBasis& basis,
                                           std::span<const int> truncations,
                                           std::span<const Complex> deletions = {},
                                           double rank_tolerance = 1e-8);

}  // namespace cohtorus

#endif  // COHTORUS_FRAMES_HPP_
