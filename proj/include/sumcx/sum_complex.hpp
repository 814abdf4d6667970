/**
 * The sum complex X_{A,k}: the complete (k-1)-skeleton of the simplex on the
 * vertex set G, plus every (k+1)-subset of G whose group sum lies in A.
 *
 * Only the top faces are stored. Lower faces are all subsets of the right
 * size and are enumerated on demand in lexicographic order.
 */
#pragma once

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "sumcx/combinatorics.hpp"
#include "sumcx/errors.hpp"
#include "sumcx/group.hpp"

namespace sumcx {

// Vertices in ascending index order; that order is the positive orientation.
struct Simplex {
  std::vector<int> vertices;

  int dimension() const { return static_cast<int>(vertices.size()) - 1; }
  auto operator<=>(const Simplex&) const = default;
};

struct SumComplex {
  GroupSpec spec;
  int k = 1;
  SubsetA A;
  std::vector<Simplex> top_faces;

  int n() const { return spec.order(); }
  int m() const { return A.size(); }
};

inline SumComplex build_sum_complex(const GroupSpec& spec, const SubsetA& A, int k) {
  const int n = spec.order();
  if (k < 1 || k >= n) {
    throw ParameterError("k must satisfy 1 <= k < n (k=" + std::to_string(k) +
                         ", n=" + std::to_string(n) + ")");
  }
  SumComplex X{spec, k, A, {}};
  if (A.empty()) return X;

  // Each top face is its lowest k vertices tau plus the unique completion
  // x = a - sum(tau) with x > max(tau).
  std::vector<int> tau(k);
  for (int i = 0; i < k; ++i) tau[i] = i;
  do {
    const int s = spec.sum(tau);
    for (int a : A.elements()) {
      const int x = spec.sub(a, s);
      if (x > tau.back()) {
        Simplex face{tau};
        face.vertices.push_back(x);
        X.top_faces.push_back(std::move(face));
      }
    }
  } while (next_combination(tau, n));
  std::sort(X.top_faces.begin(), X.top_faces.end());
  return X;
}

// f_d(X): number of d-dimensional faces, with f_{-1} = 1 for the empty face.
inline std::int64_t face_count(const SumComplex& X, int d) {
  if (d < -1 || d > X.k) {
    throw ParameterError("face dimension " + std::to_string(d) + " outside [-1, " +
                         std::to_string(X.k) + "]");
  }
  if (d == X.k) return static_cast<std::int64_t>(X.top_faces.size());
  return binomial(X.n(), d + 1);
}

// Number of top faces containing the (k-1)-face sigma. Every a in A yields a
// distinct completion vertex a - sum(sigma); it counts unless it lies in sigma.
inline int degree(const SumComplex& X, const Simplex& sigma) {
  if (sigma.dimension() != X.k - 1) {
    throw ParameterError("degree expects a face of dimension k-1=" + std::to_string(X.k - 1));
  }
  const int s = X.spec.sum(sigma.vertices);
  int deg = 0;
  for (int a : X.A.elements()) {
    const int x = X.spec.sub(a, s);
    if (!std::binary_search(sigma.vertices.begin(), sigma.vertices.end(), x)) ++deg;
  }
  return deg;
}

inline bool contains_top_face(const SumComplex& X, std::span<const int> vertices) {
  return X.A.contains(X.spec.sum(vertices));
}

// Text format:
//   group=<orders> k=<k> A=<indices>
//   one top face per line, comma-separated vertex indices
inline void write_complex_text(std::ostream& out, const SumComplex& X) {
  out << "group=" << X.spec.to_string() << " k=" << X.k << " A=" << X.A.to_string() << '\n';
  for (const auto& face : X.top_faces) {
    for (std::size_t i = 0; i < face.vertices.size(); ++i) {
      if (i) out << ',';
      out << face.vertices[i];
    }
    out << '\n';
  }
}

// Parses the text format and checks that the listed faces are exactly those
// of the rebuilt complex.
inline SumComplex read_complex_text(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw ParameterError("complex file is empty");
  std::istringstream hs(header);
  std::string group_field, k_field, a_field;
  hs >> group_field >> k_field;
  std::getline(hs >> std::ws, a_field);
  auto value_of = [](const std::string& field, const std::string& key) {
    if (field.rfind(key + "=", 0) != 0) {
      throw ParameterError("complex header missing '" + key + "='");
    }
    return field.substr(key.size() + 1);
  };
  GroupSpec spec = GroupSpec::parse(value_of(group_field, "group"));
  const int k = static_cast<int>(detail::parse_integer(value_of(k_field, "k"), "k"));
  SubsetA A = SubsetA::parse(spec, value_of(a_field, "A"));
  SumComplex X = build_sum_complex(spec, A, k);

  std::vector<Simplex> listed;
  std::string line;
  while (std::getline(in, line)) {
    if (detail::trim(line).empty()) continue;
    Simplex face;
    for (auto token : detail::split_commas(line)) {
      face.vertices.push_back(static_cast<int>(detail::parse_integer(token, "vertex")));
    }
    listed.push_back(std::move(face));
  }
  if (listed != X.top_faces) {
    throw ParameterError("listed top faces do not match the sum complex of the header");
  }
  return X;
}

}  // namespace sumcx
