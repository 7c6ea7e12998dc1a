#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ceforge/ce_system.hpp"

namespace ceforge {

// l with d_A l = h. Throws PreconditionFailed naming the first column of h
// that is not a cycle or has a nonzero homology class.
Matrix lift_through_boundary(const Matrix& h, const Matrix& d_A);
Matrix lift_through_boundary(const Matrix& h, const HomologyData& hA);

// K = { z' : λ z' ∈ im d_C }, put in Smith position: with the new basis
// e'_i (columns of basis_change), K = span(ω_i e'_i) for i < m_rank and
// M = span(e'_i : i < m_rank) is complemented by the remaining e'_i.
struct SplitCycles {
  Matrix basis_change;      // columns: new basis of C'
  Matrix basis_change_inv;
  std::size_t m_rank = 0;
  std::vector<Scalar> omega;
  Matrix k_basis;  // columns ω_i e'_i
  Matrix sigma;    // d_C sigma = -λ k_basis
};

// Requires d_C λ = 0 (PreconditionFailed otherwise).
SplitCycles split_cycles(const Matrix& lambda, const Matrix& d_C);

// δ with  classes · δ · domain ≡ obstruction  modulo the relations of
// `target`. `classes` maps cycle coordinates to classes in `target`.
// Throws PreconditionFailed if no δ exists.
Matrix construct_gamma(const Matrix& classes, const FgGroup& target, const Matrix& domain,
                       const Matrix& obstruction);

// A block map on F_region C -> F_region A in canonical generator order.
struct RegionMap {
  ElementMask region = 0;
  Matrix matrix;
};

struct StepResult {
  RegionMap map;   // on ↓q
  Matrix gamma;    // F_{β†} rows x G_q columns
  Matrix connecting;  // f'λ - λ'f''
  std::vector<std::string> certificate;
};

// Extends f' on F_{β†} to F_β for β = ↓q, lifting g on E^β_∅.
StepResult extend_step(const CESystem& sysC, const CESystem& sysA, DownSet beta, const Matrix& f_prime,
                       const Matrix& f_dd, const GroupHom& g);

RegionMap merge_union(const GradedDifferentialGroup& c, const GradedDifferentialGroup& a, const RegionMap& f_beta,
                      const RegionMap& f_gamma);

struct BuildResult {
  FilteredChainMap map;
  std::vector<std::string> certificate;
};

BuildResult build_filtered_iso(const CESystem& sysC, const CESystem& sysA, const CEIso& h, std::uint64_t seed = 0);

}  // namespace ceforge
