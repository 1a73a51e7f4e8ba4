#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ssd/design_ops.hpp"
#include "ssd/sign_matrix.hpp"
#include "ssd/spectral.hpp"

namespace ssd {

// The four ways of augmenting a strength-2 orthogonal array H(n, q) with
// two-column interactions.
struct FullAugment {
  friend bool operator==(const FullAugment&, const FullAugment&) = default;
};
struct MinusOne {
  ColumnLabel deleted;
  friend bool operator==(const MinusOne&, const MinusOne&) = default;
};
struct InteractionsOnly {
  friend bool operator==(const InteractionsOnly&, const InteractionsOnly&) = default;
};
struct SingleParent {
  int parent;  // label index of the parent main column, c_parent
  friend bool operator==(const SingleParent&, const SingleParent&) = default;
};

using SsdFamily = std::variant<FullAugment, MinusOne, InteractionsOnly, SingleParent>;

inline std::string family_name(const SsdFamily& f) {
  switch (f.index()) {
    case 0: return "full";
    case 1: return "minus-one";
    case 2: return "interactions-only";
    default: return "single-parent";
  }
}

/// The array a design is grown from, plus the columns that were deleted from
/// the saturated H(n, n-1) to reach it. `removed` is empty when unknown or
/// when nothing was deleted.
struct StartingArray {
  SignMatrix array;
  SignMatrix removed;
};

/// Deletes the given positions from a saturated design and keeps them.
inline StartingArray starting_array(const SignMatrix& saturated, const std::vector<std::size_t>& drop) {
  if (saturated.cols() + 1 != saturated.rows())
    throw std::invalid_argument("starting_array: expected a saturated n x (n-1) design");
  auto r = drop_columns(saturated, drop);
  return {std::move(r.kept), std::move(r.removed)};
}

struct SsdBuild {
  SignMatrix design;
  StartingArray start;
  SsdFamily family;
  std::optional<int> d;
  std::vector<AliasedPair> aliasing;
};

namespace detail {

inline void check_start(const StartingArray& s) {
  const auto& h = s.array;
  const std::size_t n = h.rows(), q = h.cols();
  if (q + 3 < n || q + 1 > n)
    throw std::invalid_argument("starting array has q=" + std::to_string(q) + " columns; need q in {n-1, n-2, n-3} for n=" +
                                std::to_string(n));
  for (const auto& c : h.columns())
    if (!c.label.is_main()) throw std::invalid_argument("starting array columns must be main effects");
  if (!verify_oa_strength2(h)) throw std::invalid_argument("starting array is not an OA of strength 2");
  if (s.removed.cols() != 0 && (s.removed.rows() != n || q + s.removed.cols() + 1 != n))
    throw std::invalid_argument("removed columns do not complete the start to n-1 columns");
}

// d of the triple formed by the removed columns followed by the family's
// specific columns, when that list reaches three columns.
inline std::optional<int> triple_d(const StartingArray& s, const std::vector<std::size_t>& specific) {
  if (s.removed.cols() == 0) return std::nullopt;
  std::vector<std::uint64_t> triple;
  for (std::size_t c = 0; c < s.removed.cols() && triple.size() < 3; ++c) triple.push_back(s.removed.mask(c));
  for (auto c : specific)
    if (triple.size() < 3) triple.push_back(s.array.mask(c));
  if (triple.size() < 3) return std::nullopt;
  return d_parameter(triple[0], triple[1], triple[2], s.array.rows());
}

inline std::size_t position_of_main(const SignMatrix& h, int label_index) {
  auto pos = h.find(ColumnLabel::main(label_index));
  if (!pos) throw std::invalid_argument("column c" + std::to_string(label_index) + " is not in the starting array");
  return *pos;
}

inline std::vector<SignColumn> all_interactions(const SignMatrix& h) {
  std::vector<SignColumn> out;
  for (std::size_t i = 0; i < h.cols(); ++i)
    for (std::size_t j = i + 1; j < h.cols(); ++j) out.push_back(interaction_column(h, i, j));
  return out;
}

inline SsdBuild finish(StartingArray start, std::vector<SignColumn> cols, SsdFamily family, std::optional<int> d) {
  SignMatrix design(start.array.rows(), std::move(cols));
  auto aliasing = aliasing_report(design);
  return {std::move(design), std::move(start), std::move(family), d, std::move(aliasing)};
}

}  // namespace detail

/// All q mains followed by all C(q, 2) interactions in lexicographic order.
inline SsdBuild build_full(StartingArray start) {
  detail::check_start(start);
  const auto& h = start.array;
  const std::size_t q = h.cols();
  if (h.rows() > q + q * (q - 1) / 2) throw std::invalid_argument("augmented design would not be supersaturated");
  std::vector<SignColumn> cols(h.columns().begin(), h.columns().end());
  for (auto& c : detail::all_interactions(h)) cols.push_back(c);
  return detail::finish(std::move(start), std::move(cols), FullAugment{}, std::nullopt);
}

/// The full augmentation with one labeled main or interaction column removed.
inline SsdBuild build_minus_one(StartingArray start, const ColumnLabel& deleted) {
  detail::check_start(start);
  const auto& h = start.array;
  if (h.cols() + 3 == h.rows()) throw std::invalid_argument("minus-one builds need q in {n-1, n-2}");
  std::vector<std::size_t> specific;
  if (deleted.is_main()) {
    specific.push_back(detail::position_of_main(h, deleted.first()));
  } else {
    specific.push_back(detail::position_of_main(h, deleted.first()));
    specific.push_back(detail::position_of_main(h, deleted.second()));
  }
  std::vector<SignColumn> cols;
  for (const auto& c : h.columns())
    if (c.label != deleted) cols.push_back(c);
  for (auto& c : detail::all_interactions(h))
    if (c.label != deleted) cols.push_back(c);
  const auto d = detail::triple_d(start, specific);
  return detail::finish(std::move(start), std::move(cols), MinusOne{deleted}, d);
}

/// The C(q, 2) interaction columns only.
inline SsdBuild build_interactions_only(StartingArray start) {
  detail::check_start(start);
  auto cols = detail::all_interactions(start.array);
  return detail::finish(std::move(start), std::move(cols), InteractionsOnly{}, std::nullopt);
}

/// All q mains plus the q - 1 interactions of parent column c_parent.
inline SsdBuild build_single_parent(StartingArray start, int parent) {
  detail::check_start(start);
  const auto& h = start.array;
  const std::size_t p = detail::position_of_main(h, parent);
  std::vector<SignColumn> cols(h.columns().begin(), h.columns().end());
  for (std::size_t j = 0; j < h.cols(); ++j)
    if (j != p) cols.push_back(interaction_column(h, std::min(p, j), std::max(p, j)));
  const auto d = detail::triple_d(start, {p});
  return detail::finish(std::move(start), std::move(cols), SingleParent{parent}, d);
}

inline SsdBuild build(StartingArray start, const SsdFamily& family) {
  return std::visit(
      [&](const auto& f) -> SsdBuild {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, FullAugment>) return build_full(std::move(start));
        else if constexpr (std::is_same_v<T, MinusOne>) return build_minus_one(std::move(start), f.deleted);
        else if constexpr (std::is_same_v<T, InteractionsOnly>) return build_interactions_only(std::move(start));
        else return build_single_parent(std::move(start), f.parent);
      },
      family);
}

/// Column count each family should produce from q starting columns.
inline std::size_t expected_columns(const SsdFamily& family, std::size_t q) {
  switch (family.index()) {
    case 0: return q + q * (q - 1) / 2;
    case 1: return q + q * (q - 1) / 2 - 1;
    case 2: return q * (q - 1) / 2;
    default: return 2 * q - 1;
  }
}

/// Re-derives every column from the start: mains must match the start column
/// with the same label, interactions the product of their labeled parents.
inline bool check_build(const SsdBuild& b) {
  const auto& h = b.start.array;
  if (b.design.cols() != expected_columns(b.family, h.cols())) return false;
  for (const auto& c : b.design.columns()) {
    const auto first = h.find(ColumnLabel::main(c.label.first()));
    if (!first) return false;
    std::uint64_t expect = h.mask(*first);
    if (c.label.is_interaction()) {
      const auto second = h.find(ColumnLabel::main(c.label.second()));
      if (!second) return false;
      expect ^= h.mask(*second);
    }
    if (expect != c.minus) return false;
  }
  return true;
}

}  // namespace ssd
