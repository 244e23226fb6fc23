#pragma once

// Truncated Verma modules, generalized parabolic quotients, and the tensor
// product C^N (x) M with its standard filtration.

#include "qgclass/check.hpp"
#include "qgclass/uqtri.hpp"

#include <optional>

namespace qgclass {

class DegenerateSingularVector : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// M_lambda (or M_lambda / sum U v_{lambda-alpha}) stored on weights
/// lambda - beta with height(beta) <= depth.  Components share the indexing of
/// the underlying GradedBasis.
class VermaModule {
 public:
  /// kernel_generators == nullptr gives M_lambda; otherwise the quotient by
  /// the submodule they generate (generators above depth are ignored).
  VermaModule(const GradedBasis& U, const WeightSpec& spec, int depth,
              const std::vector<Element>* kernel_generators = nullptr, Exec exec = Exec::parallel);

  const GradedBasis& algebra() const { return U_; }
  const RootDatum& datum() const { return U_.datum(); }
  const WeightSpec& spec() const { return spec_; }
  int depth() const { return depth_; }
  bool is_quotient() const { return quotient_; }

  /// Component of weight lambda - beta; -1 outside the cone, throws above depth.
  int find(const RootCoords& beta) const;
  std::size_t dim(int idx) const { return comps_[static_cast<std::size_t>(idx)].dim; }
  const RootCoords& beta(int idx) const { return U_.comp(static_cast<std::size_t>(idx)).beta; }
  int below(int idx, int a) const { return U_.comp(static_cast<std::size_t>(idx)).below[static_cast<std::size_t>(a)]; }
  /// Component of beta + alpha_a, -1 above depth.
  int above(int idx, int a) const;

  /// f_a : comp below(idx, a) -> idx.
  const Matrix& F(int idx, int a) const;
  /// e_a : idx -> comp below(idx, a).
  const Matrix& E(int idx, int a) const;
  /// q^{(lambda - beta, mu)} on component idx.
  Scalar cartan(int idx, const Weight& mu) const;

  /// U^- coordinates (u v_lambda) -> module coordinates.
  Vec project(int idx, const Vec& u) const;
  const Echelon* kernel(int idx) const;

  /// y x for a lowering word (rightmost letter first); throws beyond depth.
  Vec lower(const Word& y, int idx, Vec x, int& out_idx) const;
  /// Raising word; out_idx = -1 (empty result) when it leaves the cone.
  Vec raise(const Word& x, int idx, Vec v, int& out_idx) const;
  bool kernel_e_invariant() const;

 private:
  struct Comp {
    std::size_t dim = 0;
    std::vector<Matrix> E;
    std::vector<Matrix> F;  // quotient only
    std::optional<Echelon> kernel;
    std::vector<std::size_t> free;  // quotient basis columns in U coordinates
  };
  void build_e(int idx);
  void build_kernel(int idx, const std::vector<Element>& gens);
  void project_actions(int idx);

  const GradedBasis& U_;
  WeightSpec spec_;
  int depth_;
  bool quotient_;
  std::vector<Comp> comps_;
  std::vector<std::vector<Matrix>> plain_e_;  // unprojected e-action, quotient only
};

/// C^N (x) M by weight lambda + eps_1 - delta, delta in Z_+ Pi.  Block delta
/// collects the parts w_m (x) M[lambda - beta] with beta = delta - (eps_1 - eps_m).
class TensorSpace {
 public:
  struct Part {
    int m;
    int comp;  // module component
    std::size_t offset;
    std::size_t dim;
  };
  struct Block {
    RootCoords delta;
    int height = 0;
    std::vector<Part> parts;
    std::size_t dim = 0;
  };

  TensorSpace(const VermaModule& M, const NaturalRep& rep, Exec exec = Exec::parallel);

  const VermaModule& module() const { return M_; }
  const NaturalRep& rep() const { return rep_; }
  std::size_t size() const { return blocks_.size(); }
  const Block& block(int idx) const { return blocks_[static_cast<std::size_t>(idx)]; }
  int find(const RootCoords& delta) const;  // -1 outside the cone or above the module depth
  int block_of_index(int j) const;          // block of w_j (x) v_lambda
  RootCoords delta_of_index(int j) const;
  const Part* part(int idx, int m) const;

  /// Delta(e_a) : block idx -> block delta - alpha_a (empty matrix if none).
  const Matrix& dE(int idx, int a) const { return dE_[static_cast<std::size_t>(idx)][static_cast<std::size_t>(a)]; }
  /// Delta(f_a) : block idx -> block delta + alpha_a (empty matrix above depth).
  const Matrix& dF(int idx, int a) const { return dF_[static_cast<std::size_t>(idx)][static_cast<std::size_t>(a)]; }
  /// Opposite coproduct Delta^op(e_a), Delta^op(f_a), built on demand.
  Matrix dE_op(int idx, int a) const;
  Matrix dF_op(int idx, int a) const;
  int down(int idx, int a) const;  // delta - alpha_a
  int up(int idx, int a) const;    // delta + alpha_a

  /// Vector w_m (x) x with x in module coordinates of the matching part.
  Vec embed(int idx, int m, const Vec& x) const;
  Vec generator(int j) const;  // w_j (x) v_lambda in its block

 private:
  Matrix build_dE(int idx, int a) const;
  Matrix build_dF(int idx, int a) const;

  const VermaModule& M_;
  const NaturalRep& rep_;
  std::vector<Block> blocks_;
  std::vector<std::vector<Matrix>> dE_, dF_;
};

/// Per-block subspaces of a TensorSpace on blocks of height <= max_height.
struct Subspace {
  int max_height = 0;
  std::vector<Echelon> blocks;                    // indexed like the TensorSpace
  std::vector<std::vector<Vec>> fresh;            // vectors added beyond the base
  std::size_t dim(int idx) const { return blocks[static_cast<std::size_t>(idx)].rank(); }
};

/// U(g)-submodule generated by gens (pairs block, vector) plus base, on blocks
/// of height <= max_height.
Subspace submodule_closure(const TensorSpace& T, const std::vector<std::pair<int, Vec>>& gens, int max_height,
                           const Subspace* base = nullptr, Exec exec = Exec::parallel);

/// V_0 = 0, V_1, ..., V_N with V_j generated by w_1..w_j (x) v_lambda.
std::vector<Subspace> standard_filtration(const TensorSpace& T, int max_height, Exec exec = Exec::parallel);

/// Throws DegenerateSingularVector unless every e_a kills u v_lambda in M.
void verify_singular(const VermaModule& plain, const Element& v);

/// Membership and collapse checks of the standard filtration.
CheckList filtration_checks(const TensorSpace& T, const std::vector<Subspace>& V, int depth, const std::string& tag);

/// Relations of U_q(g) as operators on every stored weight space.
CheckList module_relation_checks(const VermaModule& M, const std::string& tag);

}  // namespace qgclass
