#pragma once

// Truncated U_q(g_-) (and, by mirroring letters, U_q(g_+)) as the free algebra
// modulo the q-Serre ideal, one weight component at a time.

#include "qgclass/linalg.hpp"
#include "qgclass/rootdatum.hpp"

#include <map>
#include <vector>

namespace qgclass {

using Word = std::vector<int>;

enum class Exec { serial, parallel };

/// Homogeneous element: weight in simple-root coordinates plus coordinates in
/// the normal basis of that weight.
struct Element {
  RootCoords weight;
  Vec coords;
};

class GradedBasis {
 public:
  struct Component {
    RootCoords beta;
    int height = 0;
    std::vector<Word> basis;  // lex-least normal words, ascending
    std::vector<int> below;   // component index of beta - alpha_a, or -1
    std::vector<Matrix> left; // left[a] : Q_{beta-alpha_a} -> Q_beta
    std::size_t dim() const { return basis.size(); }
  };

  GradedBasis(const RootDatum& datum, int cutoff, Exec exec = Exec::parallel);

  const RootDatum& datum() const { return datum_; }
  int cutoff() const { return cutoff_; }
  std::size_t size() const { return comps_.size(); }
  const Component& comp(std::size_t idx) const { return comps_[idx]; }
  /// Index of the component of weight beta, -1 if beta is not in the cone.
  /// Throws ConsistencyError above the cutoff.
  int find(const RootCoords& beta) const;
  std::size_t dim(const RootCoords& beta) const;

  RootCoords weight_of(const Word& w) const;
  /// Coordinates of u*x where x lives in component idx.  out_idx receives the
  /// target component.
  Vec left_multiply(const Word& u, int idx, Vec x, int& out_idx) const;
  /// Normal form of a word.
  Element rewrite(const Word& w) const;
  Element unit() const;
  Element generator(int a) const;

  Element multiply(const Element& a, const Element& b) const;
  Element add(const Element& a, const Element& b) const;
  Element scale(const Element& a, const Scalar& c) const;
  /// ab - q^c ba.
  Element qcommutator(const Element& a, const Element& b, const Rational& c) const;

  std::string to_string(const Element& x) const;

 private:
  void build_component(std::size_t idx);

  const RootDatum& datum_;
  int cutoff_;
  std::vector<Component> comps_;
  std::map<RootCoords, int> index_;
};

std::string word_string(const Word& w, char letter = 'f');

}  // namespace qgclass
