#include "flp/variable.hpp"

#include <algorithm>

#include "flp/error.hpp"

namespace flp {

std::string Coordinate::name() const { return (is_base() ? "x" : "y") + std::to_string(index); }

Variable Variable::coordinate(int a) {
  if (a < 1) throw ShapeError("coordinate index must be >= 1, got " + std::to_string(a));
  Variable v;
  v.kind_ = VariableKind::Coordinate;
  v.index_ = a;
  return v;
}

Variable Variable::fiber(int i) {
  if (i < 1) throw ShapeError("fiber index must be >= 1, got " + std::to_string(i));
  Variable v;
  v.kind_ = VariableKind::Fiber;
  v.index_ = i;
  return v;
}

Variable Variable::jet(std::string tag, std::vector<Coordinate> partials, bool on_total_space) {
  if (!on_total_space &&
      std::any_of(partials.begin(), partials.end(), [](const Coordinate& c) { return c.is_fiber(); }))
    throw ShapeError("base jet '" + tag + "' cannot carry fiber derivatives");
  std::sort(partials.begin(), partials.end());
  Variable v;
  v.kind_ = VariableKind::Jet;
  v.tag_ = std::move(tag);
  v.partials_ = std::move(partials);
  v.total_ = on_total_space;
  return v;
}

Coordinate Variable::direction() const {
  switch (kind_) {
    case VariableKind::Coordinate: return Coordinate::base(index_);
    case VariableKind::Fiber: return Coordinate::fiber(index_);
    case VariableKind::Jet: break;
  }
  throw ShapeError("jet symbol '" + tag_ + "' has no coordinate direction");
}

Variable Variable::differentiated(Coordinate c) const {
  if (!is_jet()) throw ShapeError("only jet symbols can be differentiated symbolically");
  Variable v = *this;
  v.partials_.insert(std::upper_bound(v.partials_.begin(), v.partials_.end(), c), c);
  return v;
}

std::string Variable::name() const {
  switch (kind_) {
    case VariableKind::Coordinate: return "x" + std::to_string(index_);
    case VariableKind::Fiber: return "y" + std::to_string(index_);
    case VariableKind::Jet: break;
  }
  if (partials_.empty()) return tag_;
  std::string out = tag_ + "_{";
  for (std::size_t k = 0; k < partials_.size(); ++k) {
    if (k) out += ',';
    out += partials_[k].name();
  }
  return out + "}";
}

}  // namespace flp
