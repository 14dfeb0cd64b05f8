// Copyright (c) the swlab developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef SWLAB_CLASSIFIER_HPP
#define SWLAB_CLASSIFIER_HPP

// Case analysis of the adiabatic moduli of the deformed monopole equations
// on a degree-ell circle bundle over a genus-g surface, per line-bundle
// class.  Reducibles are flat connections; irreducible limits are
// normalized holomorphic pairs whose degree d satisfies 0 < |d| <= g-1 and
// d = k (mod ell).

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace swlab {

struct ClassifierInput {
  int genus = 1;          // >= 1
  long ell = 0;
  bool c1_is_torsion = true;  // false: the class is not pulled back from the base
  long k = 0;             // torsion class mod |ell| (ell != 0) or base degree (ell == 0)
};

struct Classification {
  enum class Kind {
    Empty,
    ReducibleTori,
    ReducibleOnly,
    ReduciblePlusUniqueIrreducible,
    IrreducibleFamily,
  };
  Kind kind = Kind::Empty;
  bool has_reducibles = false;
  int reducible_torus_count = 0;
  int reducible_torus_dim = 0;
  std::vector<long> degrees;   // achievable holomorphic-pair degrees
  double beta_norm_sq = 0.0;   // normalization 2*|deg| when a single degree applies
  std::string note;

  std::string kind_name() const {
    switch (kind) {
      case Kind::Empty: return "Empty";
      case Kind::ReducibleTori: return "ReducibleTori";
      case Kind::ReducibleOnly: return "ReducibleOnly";
      case Kind::ReduciblePlusUniqueIrreducible: return "ReduciblePlusUniqueIrreducible";
      case Kind::IrreducibleFamily: return "IrreducibleFamily";
    }
    return "?";
  }
};

// Stable range of torsion classes: all limits reducible.  Defined for |ell| >= 2g.
inline std::vector<long> stable_range(int genus, long ell) {
  std::vector<long> v;
  const long a = std::labs(ell);
  if (a < 2 * genus) return v;
  for (long k = genus; k <= a - genus; ++k) v.push_back(k);
  return v;
}

inline Classification classify_adiabatic(const ClassifierInput& in) {
  if (in.genus < 1) throw std::invalid_argument("classify_adiabatic: genus must be >= 1");
  Classification out;

  if (!in.c1_is_torsion) {
    out.kind = Classification::Kind::Empty;
    out.note = "class is not pulled back from the base: no solutions for large deformation";
    return out;
  }

  const int g = in.genus;
  const long gm1 = g - 1;

  if (in.ell == 0) {
    const long d = in.k;  // unique base degree
    if (d == 0) {
      out.kind = Classification::Kind::ReducibleTori;
      out.has_reducibles = true;
      out.reducible_torus_count = 1;
      out.reducible_torus_dim = 2 * g + 1;
      out.note = "flat moduli form one torus of dimension 2g+1";
      return out;
    }
    if (std::labs(d) <= gm1) {
      out.kind = Classification::Kind::IrreducibleFamily;
      out.degrees = {d};
      out.beta_norm_sq = 2.0 * static_cast<double>(std::labs(d));
      out.note = std::labs(d) == gm1 ? "single normalized holomorphic pair"
                                     : "normalized holomorphic pairs of one degree";
      return out;
    }
    out.kind = Classification::Kind::Empty;
    out.note = "no holomorphic pairs with |deg| <= g-1 and no flat connections";
    return out;
  }

  const long a = std::labs(in.ell);
  const long k = ((in.k % a) + a) % a;  // canonical torsion representative

  // all degree representatives with 0 < |d| <= g-1
  std::vector<long> degrees;
  for (long d = -gm1; d <= gm1; ++d)
    if (d != 0 && ((d - k) % a + a) % a == 0) degrees.push_back(d);

  out.has_reducibles = true;  // flat connections exist for every torsion class
  out.reducible_torus_count = static_cast<int>(a);
  out.reducible_torus_dim = 2 * g;

  if (degrees.empty()) {
    bool in_stable = false;
    for (long v : stable_range(g, in.ell)) in_stable |= (v == k);
    if (in_stable) {
      out.kind = Classification::Kind::ReducibleOnly;
      out.note = "class lies in the adiabatically stable range";
    } else {
      out.kind = Classification::Kind::ReducibleTori;
      out.note = "flat tori only; no holomorphic-pair degree is reachable";
    }
    return out;
  }

  if (degrees.size() == 1 && std::labs(degrees[0]) == gm1 && a >= 2 * g - 1) {
    out.kind = Classification::Kind::ReduciblePlusUniqueIrreducible;
    out.degrees = degrees;
    out.beta_norm_sq = 2.0 * static_cast<double>(gm1);
    out.note = "one normalized holomorphic pair besides the flat tori";
    return out;
  }

  out.kind = Classification::Kind::IrreducibleFamily;
  out.degrees = degrees;
  if (degrees.size() == 1) out.beta_norm_sq = 2.0 * static_cast<double>(std::labs(degrees[0]));
  out.note = "holomorphic pairs coexist with the flat tori";
  return out;
}

}  // namespace swlab

#endif  // SWLAB_CLASSIFIER_HPP
