// hilbert.hpp — truncated emitter ⊗ Fock product space and its ladder operators.
#pragma once

#include <Eigen/Dense>

namespace dcesim {

enum class Level : int { g = 0, e = 1, f = 2 };

// Basis ordering: index = num_levels*n + level, with n the photon number.
struct HilbertSpace {
  int n_max = 8;       // highest retained Fock state
  int num_levels = 3;  // 3 = ladder {g,e,f}; 2 = {g,e} comparison model

  HilbertSpace() = default;
  HilbertSpace(int n_max_, int num_levels_ = 3);

  int dim() const { return num_levels * (n_max + 1); }
  int index(Level s, int n) const;
  Level level_of(int idx) const { return static_cast<Level>(idx % num_levels); }
  int photons_of(int idx) const { return idx / num_levels; }
  bool has_f() const { return num_levels == 3; }
};

Eigen::MatrixXcd annihilation(const HilbertSpace& hs);
Eigen::MatrixXcd creation(const HilbertSpace& hs);
Eigen::MatrixXcd number_operator(const HilbertSpace& hs);

// |j⟩⟨k| ⊗ 1 on the photon factor.
Eigen::MatrixXcd emitter_transfer(const HilbertSpace& hs, Level j, Level k);

// Projector |s,n⟩⟨s,n|-style basis vector.
Eigen::VectorXcd basis_state(const HilbertSpace& hs, Level s, int n);

}  // namespace dcesim
