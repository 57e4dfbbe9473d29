#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cobtree {

/// Placement of a top subtree relative to its bottom subtrees. PreOrder covers
/// both the pre- and the post-order (mirrored) placement; which end the top
/// subtree occupies is decided by where its parent leaf lies.
enum class Orientation { InOrder, PreOrder };

const char* to_string(Orientation o) noexcept;

/// Position, counted outward from the top subtree, of the first bottom subtree
/// that is arranged in-order. Bottom subtrees closer than that are pre-order.
///  - One:   every bottom subtree in-order.
///  - Two:   the closest bottom subtree on each side pre-order, the rest in-order.
///  - Never: every bottom subtree pre-order (written "inf").
///  - Any:   irrelevant because bottom subtrees are single nodes (written "*");
///           behaves like Never.
enum class FirstInOrder { One, Two, Never, Any };

/// Number of pre-order bottom subtrees preceding the first in-order one on a side.
int preorder_bottoms(FirstInOrder k) noexcept;

/// The cut height g of a subtree as a function of its height m and orientation.
class CutPolicy {
 public:
  enum class Kind { Const, Half, HeightMinusOne, Bender, Opt, OptNormalized, Table };
  using TableMap = std::map<std::pair<Orientation, int>, int>;

  static CutPolicy constant(int g);
  static CutPolicy half();
  static CutPolicy height_minus_one();
  static CutPolicy bender();
  static CutPolicy opt();
  static CutPolicy opt_normalized();
  static CutPolicy table(TableMap entries);

  Kind kind() const noexcept { return kind_; }
  int constant_value() const noexcept { return constant_; }
  const TableMap& entries() const noexcept { return table_; }

  /// Unchecked evaluation; nullopt when a Table has no entry for (o, m).
  std::optional<int> raw(Orientation o, int m) const;

  /// Checked evaluation. Throws DomainError unless m >= 2 and 1 <= g <= m - 1.
  int operator()(Orientation o, int m) const;

  /// Superscript form used in spec strings: "1", "half", "h-1", "bender", "opt", "optn", "table".
  std::string to_string() const;

  friend bool operator==(const CutPolicy&, const CutPolicy&) = default;

 private:
  CutPolicy(Kind kind, int constant) : kind_(kind), constant_(constant) {}

  Kind kind_;
  int constant_;
  TableMap table_;
};

/// Pre-order cut of the weighted-edge-product optimum: 1 for h <= 5, floor((h-1)/2) above.
int opt_preorder_cut(int m) noexcept;
/// In-order cut of the optimum: floor(h/2), except 2 at h = 6.
int opt_inorder_cut(int m) noexcept;
/// Cut leaving bottom subtrees whose height is the largest power of two below m.
int bender_cut(int m) noexcept;

/// A Recursive Layout: outer orientation, first in-order slot k, cut policy,
/// and whether bottom subtrees are taken in reverse parent-leaf order.
struct LayoutSpec {
  Orientation outer = Orientation::InOrder;
  FirstInOrder first_inorder = FirstInOrder::One;
  CutPolicy cut = CutPolicy::constant(1);
  bool alternating = false;

  /// Canonical spec string, e.g. "~I^opt_2".
  std::string to_string() const;

  friend bool operator==(const LayoutSpec&, const LayoutSpec&) = default;
};

/// Names accepted by named_spec, in a stable order.
const std::vector<std::string>& layout_names();

/// Looks up a named layout ("minwep", "pre-veb", ...). Throws LookupError.
LayoutSpec named_spec(std::string_view name);

/// Parses `[~]<I|P>^<cut>_<k>`. Throws LookupError on malformed input.
LayoutSpec parse_spec(std::string_view text);

/// Accepts either a layout name or a spec string.
LayoutSpec resolve_layout(std::string_view name_or_spec);

/// Returns the spec with alternating = true.
LayoutSpec alternate(LayoutSpec spec);

struct ValidationReport {
  bool valid = true;
  std::vector<std::string> problems;

  explicit operator bool() const noexcept { return valid; }
  std::string summary() const;
};

/// Checks that the cut policy yields 1 <= g < m for every (orientation, height)
/// the recursion reaches from a tree of height h.
ValidationReport validate_spec(const LayoutSpec& spec, int h);

}  // namespace cobtree
