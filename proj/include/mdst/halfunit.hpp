#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mdst {

// Exact scalar used for every weight, distance, eccentricity and edge offset
// in the system. Values are stored as a signed count of half weight units:
// an edge of weight w is stored as 2w, so the only division the center
// computation ever needs (the midpoint of two crossing segments) stays
// integral. No floating point anywhere.
class HalfUnit {
 public:
  constexpr HalfUnit() = default;

  static constexpr HalfUnit from_weight(std::int64_t units) {
    return HalfUnit(units * 2);
  }
  static constexpr HalfUnit from_halves(std::int64_t halves) {
    return HalfUnit(halves);
  }

  constexpr std::int64_t halves() const { return halves_; }
  constexpr bool is_whole() const { return halves_ % 2 == 0; }

  // Whole weight units; only valid for even half counts.
  std::int64_t whole() const {
    if (!is_whole()) throw std::logic_error("HalfUnit::whole on odd half count");
    return halves_ / 2;
  }

  // Exact halving; the caller guarantees the count is even (true for every
  // segment-crossing formula on integer weights).
  HalfUnit half() const {
    if (halves_ % 2 != 0) throw std::logic_error("HalfUnit::half on odd half count");
    return HalfUnit(halves_ / 2);
  }

  // "3", "1.5", "-0.5"
  std::string str() const {
    std::int64_t h = halves_;
    bool neg = h < 0;
    if (neg) h = -h;
    std::string s = neg ? "-" : "";
    s += std::to_string(h / 2);
    if (h % 2 != 0) s += ".5";
    return s;
  }

  friend constexpr HalfUnit operator+(HalfUnit a, HalfUnit b) {
    return HalfUnit(a.halves_ + b.halves_);
  }
  friend constexpr HalfUnit operator-(HalfUnit a, HalfUnit b) {
    return HalfUnit(a.halves_ - b.halves_);
  }
  constexpr HalfUnit& operator+=(HalfUnit o) {
    halves_ += o.halves_;
    return *this;
  }
  constexpr HalfUnit& operator-=(HalfUnit o) {
    halves_ -= o.halves_;
    return *this;
  }
  friend constexpr HalfUnit operator*(std::int64_t k, HalfUnit a) {
    return HalfUnit(k * a.halves_);
  }
  constexpr auto operator<=>(const HalfUnit&) const = default;

 private:
  explicit constexpr HalfUnit(std::int64_t halves) : halves_(halves) {}
  std::int64_t halves_ = 0;
};

inline constexpr HalfUnit kZero = HalfUnit::from_halves(0);

inline HalfUnit min(HalfUnit a, HalfUnit b) { return a < b ? a : b; }
inline HalfUnit max(HalfUnit a, HalfUnit b) { return a < b ? b : a; }

}  // namespace mdst
