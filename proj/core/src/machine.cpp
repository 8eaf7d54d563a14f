#include "dki/machine.hpp"

#include <algorithm>
#include <stdexcept>

namespace dki {

std::string operation_name(Operation op) {
  return "d" + std::to_string(op.index);
}

std::optional<Operation> parse_operation(std::string_view name, int k) {
  if (name.size() < 2 || name[0] != 'd') return std::nullopt;
  int idx = 0;
  for (char c : name.substr(1)) {
    if (c < '0' || c > '9') return std::nullopt;
    idx = idx * 10 + (c - '0');
  }
  if (idx > k + 1) return std::nullopt;
  return Operation{idx};
}

Configuration::Configuration(int k) : k_(k) {
  if (k < 0) throw std::invalid_argument("stack count k must be >= 0");
  dstacks_.resize(static_cast<size_t>(k));
}

Configuration::Configuration(const Permutation& input, int k)
    : Configuration(k) {
  reset(input.values());
}

void Configuration::reset(std::span<const int> values) {
  input_.assign(values.begin(), values.end());
  pos_ = 0;
  for (auto& d : dstacks_) d.clear();
  istack_.clear();
  output_.clear();
  emitted_.assign(values.size() + 1, false);
  next_needed_ = 1;
}

std::span<const int> Configuration::input_tail() const {
  return std::span<const int>(input_).subspan(static_cast<size_t>(pos_));
}

std::span<const int> Configuration::dstack(int i) const {
  if (i < 1 || i > k_)
    throw std::out_of_range("decreasing stack index " + std::to_string(i));
  return dstacks_[static_cast<size_t>(i - 1)];
}

std::optional<int> Configuration::dstack_top(int i) const {
  const auto& d = dstacks_.at(static_cast<size_t>(i - 1));
  if (d.empty()) return std::nullopt;
  return d.back();
}

std::optional<int> Configuration::istack_top() const {
  if (istack_.empty()) return std::nullopt;
  return istack_.back();
}

bool Configuration::push_into_dstack_ok(int i, int value) const {
  const auto& d = dstacks_[static_cast<size_t>(i - 1)];
  return d.empty() || value > d.back();
}

bool Configuration::push_into_istack_ok(int value) const {
  return istack_.empty() || value < istack_.back();
}

bool Configuration::any_feeder_legal() const {
  for (int i = 0; i <= k_; ++i)
    if (legal(Operation{i})) return true;
  return false;
}

bool Configuration::legal(Operation op) const {
  const int i = op.index;
  if (i < 0 || i > k_ + 1)
    throw std::out_of_range("operation index " + std::to_string(i) +
                            " out of range 0.." + std::to_string(k_ + 1));
  if (i == 0) {
    if (input_empty()) return false;
    const int v = input_front();
    return k_ == 0 ? push_into_istack_ok(v) : push_into_dstack_ok(1, v);
  }
  if (i <= k_) {
    const auto& src = dstacks_[static_cast<size_t>(i - 1)];
    if (src.empty()) return false;
    return i == k_ ? push_into_istack_ok(src.back())
                   : push_into_dstack_ok(i + 1, src.back());
  }
  // d_{k+1}: emit only the next needed value, or as last resort when the
  // machine would otherwise be stuck.
  if (istack_.empty()) return false;
  return istack_.back() == next_needed_ || !any_feeder_legal();
}

std::vector<Operation> Configuration::legal_ops() const {
  std::vector<Operation> ops;
  for (int i = 0; i <= k_ + 1; ++i)
    if (legal(Operation{i})) ops.push_back(Operation{i});
  return ops;
}

bool Configuration::is_final() const {
  if (!input_empty() || !istack_.empty()) return false;
  for (const auto& d : dstacks_)
    if (!d.empty()) return false;
  return true;
}

bool Configuration::is_sorted_final() const {
  if (!is_final()) return false;
  for (size_t i = 0; i < output_.size(); ++i)
    if (output_[i] != static_cast<int>(i) + 1) return false;
  return true;
}

void Configuration::step(Operation op) {
  const int i = op.index;
  if (i < 0 || i > k_ + 1)
    throw std::out_of_range("operation index " + std::to_string(i));
  if (i == 0) {
    if (input_empty())
      throw std::logic_error("d0 on empty input");
    const int v = input_front();
    if (k_ == 0) {
      if (!push_into_istack_ok(v))
        throw std::logic_error("d0 would break increasing-stack order");
      istack_.push_back(v);
    } else {
      if (!push_into_dstack_ok(1, v))
        throw std::logic_error("d0 would break decreasing-stack order");
      dstacks_[0].push_back(v);
    }
    ++pos_;
    return;
  }
  if (i <= k_) {
    auto& src = dstacks_[static_cast<size_t>(i - 1)];
    if (src.empty())
      throw std::logic_error(operation_name(op) + " on empty stack");
    const int v = src.back();
    if (i == k_) {
      if (!push_into_istack_ok(v))
        throw std::logic_error(operation_name(op) +
                               " would break increasing-stack order");
      istack_.push_back(v);
    } else {
      if (!push_into_dstack_ok(i + 1, v))
        throw std::logic_error(operation_name(op) +
                               " would break decreasing-stack order");
      dstacks_[static_cast<size_t>(i)].push_back(v);
    }
    src.pop_back();
    return;
  }
  if (istack_.empty())
    throw std::logic_error("emission from empty increasing stack");
  const int v = istack_.back();
  istack_.pop_back();
  output_.push_back(v);
  emitted_[static_cast<size_t>(v)] = true;
  while (next_needed_ <= n() && emitted_[static_cast<size_t>(next_needed_)])
    ++next_needed_;
}

namespace {

void append_region(std::string& out, const std::string& label,
                   std::span<const int> vals, bool reversed) {
  out += label;
  out.push_back('[');
  if (reversed) {
    for (size_t i = vals.size(); i-- > 0;) {
      out += std::to_string(vals[i]);
      if (i) out.push_back(' ');
    }
  } else {
    for (size_t i = 0; i < vals.size(); ++i) {
      if (i) out.push_back(' ');
      out += std::to_string(vals[i]);
    }
  }
  out.push_back(']');
}

}  // namespace

std::string Configuration::render() const {
  std::string out;
  append_region(out, "OUT", output_, false);
  out.push_back(' ');
  append_region(out, "I", istack_, true);
  for (int i = k_; i >= 1; --i) {
    out.push_back(' ');
    append_region(out, "D" + std::to_string(i),
                  dstacks_[static_cast<size_t>(i - 1)], true);
  }
  out.push_back(' ');
  append_region(out, "IN", input_tail(), false);
  return out;
}

Configuration initial(const Permutation& input, int k) {
  return Configuration(input, k);
}

Configuration apply(Configuration c, Operation op) {
  c.step(op);
  return c;
}

}  // namespace dki
