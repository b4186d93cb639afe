#include "cohtorus/frames.hpp"

#include <algorithm>
#include <cmath>

#include "cohtorus/weyl_heisenberg.hpp"

namespace cohtorus {

namespace {

bool canonical_less(Complex a, Complex b) {
  const double na = std::norm(a);
  const double nb = std::norm(b);
  if (na != nb) return na < nb;
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

MatrixXc pairwise_frame_sum(std::span<const Complex> points, int n) {
  if (points.size() <= 4) {
    MatrixXc s = MatrixXc::Zero(n, n);
    for (const Complex a : points) {
      const VectorXc f = fock_displacement(a, n);
      s.noalias() += f * f.adjoint();
    }
    return s;
  }
  const std::size_t half = points.size() / 2;
  return pairwise_frame_sum(points.first(half), n) +
         pairwise_frame_sum(points.subspan(half), n);
}

}  // namespace

HermitianMatrix gram_matrix(std::span<const Complex> points) {
  if (points.empty()) throw InvalidArgument("Gram matrix needs at least one point");
  const auto n = static_cast<Eigen::Index>(points.size());
  MatrixXc g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    g(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      g(i, j) = overlap(points[static_cast<std::size_t>(i)], points[static_cast<std::size_t>(j)]);
      g(j, i) = std::conj(g(i, j));
    }
  }
  return HermitianMatrix(std::move(g));
}

std::vector<Complex> lattice_points_within(const LatticeBasis& basis, double radius,
                                           std::span<const Complex> deletions) {
  if (!(radius > 0.0)) throw InvalidArgument("radius must be positive");
  const double area = basis.cell_area();
  // |m1| <= R |w2| / area and |m2| <= R |w1| / area.
  const long r1 = static_cast<long>(std::ceil(radius * std::abs(basis.w2()) / area)) + 1;
  const long r2 = static_cast<long>(std::ceil(radius * std::abs(basis.w1()) / area)) + 1;
  std::vector<Complex> out;
  for (long m1 = -r1; m1 <= r1; ++m1) {
    for (long m2 = -r2; m2 <= r2; ++m2) {
      const Complex a = basis.point(m1, m2);
      if (std::abs(a) > radius) continue;
      const bool deleted = std::any_of(deletions.begin(), deletions.end(), [a](Complex d) {
        return std::abs(a - d) <= 1e-9 * (1.0 + std::abs(d));
      });
      if (!deleted) out.push_back(a);
    }
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

HermitianMatrix frame_operator(std::span<const Complex> points, int n) {
  if (n < 1) throw InvalidArgument("Fock truncation must be at least 1");
  if (points.empty()) throw EmptyLattice("no lattice point in the frame");
  std::vector<Complex> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end(), canonical_less);
  return HermitianMatrix(pairwise_frame_sum(sorted, n));
}

HermitianMatrix frame_operator(const LatticeBasis& basis, int n, double radius,
                               std::span<const Complex> deletions) {
  if (n < 2) throw InvalidArgument("frame operator truncation must be at least 2");
  const auto points = lattice_points_within(basis, radius, deletions);
  return frame_operator(points, n);
}

double matched_radius(int n) { return std::sqrt(2.0 * n) + 3.0; }

std::string_view to_string(RankVerdict verdict) {
  return verdict == RankVerdict::FullRank ? "FullRank" : "RankDeficient";
}

CompletenessReport completeness_diagnostic(const LatticeBasis& basis,
                                           std::span<const int> truncations,
                                           std::span<const Complex> deletions,
                                           double rank_tolerance) {
  if (truncations.empty()) throw InvalidArgument("truncation list is empty");
  if (!std::is_sorted(truncations.begin(), truncations.end())) {
    throw InvalidArgument("truncation list must be ascending");
  }
  if (!(rank_tolerance > 0.0)) throw InvalidArgument("rank tolerance must be positive");
  CompletenessReport report{basis, {}, {}, {}, {}, RankVerdict::FullRank, rank_tolerance, {}};
  report.deleted_points.assign(deletions.begin(), deletions.end());
  for (const int n : truncations) {
    const auto s = frame_operator(basis, n, matched_radius(n), deletions);
    Eigen::VectorXd spectrum = hermitian_spectrum(s);
    report.truncation_sizes.push_back(n);
    report.min_eigs.push_back(spectrum(0));
    report.max_eigs.push_back(spectrum(spectrum.size() - 1));
    report.final_spectrum = std::move(spectrum);
  }
  const bool full = report.min_eigs.back() > rank_tolerance * report.max_eigs.back();
  report.verdict = full ? RankVerdict::FullRank : RankVerdict::RankDeficient;
  return report;
}

}  // namespace cohtorus
