#pragma once

// Dense complex arrays over the complexified frame index set.
//
// Frame index A runs over 0..2n-1: A < n is the (1,0) vector e_{A+1},
// A >= n is its conjugate. Storage is row-major with the last index fastest.

#include <array>
#include <cassert>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace ahg {

using cplx = std::complex<double>;

class CTensor {
 public:
  CTensor() = default;
  CTensor(int extent, int rank)
      : extent_(extent), rank_(rank), data_(volume(extent, rank), cplx{}) {}

  int extent() const { return extent_; }
  int rank() const { return rank_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  template <class... I>
  cplx& operator()(I... idx) {
    return data_[offset(idx...)];
  }
  template <class... I>
  const cplx& operator()(I... idx) const {
    return data_[offset(idx...)];
  }

  cplx& at(std::span<const int> idx) { return data_[offset_of(idx)]; }
  const cplx& at(std::span<const int> idx) const {
    return data_[offset_of(idx)];
  }

  std::span<cplx> flat() { return data_; }
  std::span<const cplx> flat() const { return data_; }

  double max_abs() const;

 private:
  static std::size_t volume(int extent, int rank) {
    std::size_t v = 1;
    for (int r = 0; r < rank; ++r) v *= static_cast<std::size_t>(extent);
    return v;
  }

  template <class... I>
  std::size_t offset(I... idx) const {
    assert(static_cast<int>(sizeof...(I)) == rank_);
    std::size_t off = 0;
    ((off = off * static_cast<std::size_t>(extent_) +
            static_cast<std::size_t>(idx)),
     ...);
    return off;
  }

  std::size_t offset_of(std::span<const int> idx) const {
    assert(static_cast<int>(idx.size()) == rank_);
    std::size_t off = 0;
    for (int i : idx) {
      off = off * static_cast<std::size_t>(extent_) +
            static_cast<std::size_t>(i);
    }
    return off;
  }

  int extent_ = 0;
  int rank_ = 0;
  std::vector<cplx> data_;
};

/// Frame index of the conjugate vector: e_i <-> conj(e_i).
inline int conj_index(int A, int n) { return A < n ? A + n : A - n; }

/// Calls fn(idx) for every multi-index in [0, extent)^rank, last index fastest.
template <class Fn>
void for_each_index(int rank, int extent, Fn&& fn) {
  std::vector<int> idx(static_cast<std::size_t>(rank), 0);
  if (extent <= 0) return;
  while (true) {
    fn(std::span<const int>(idx));
    int r = rank - 1;
    while (r >= 0 && ++idx[static_cast<std::size_t>(r)] == extent) {
      idx[static_cast<std::size_t>(r)] = 0;
      --r;
    }
    if (r < 0) return;
  }
}

}  // namespace ahg
