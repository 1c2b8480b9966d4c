#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace longalign::memstat {

// Process-wide live-cell accounting for DP state. Boundary covers every
// linear-memory buffer (row/column boundaries, corners, middle rows); Leaf
// covers the quadratic traceback matrices of small leaf subproblems.
enum class Pool { Boundary, Leaf };

void add(Pool pool, std::int64_t cells);
void sub(Pool pool, std::int64_t cells);
std::int64_t live(Pool pool);
std::int64_t peak(Pool pool);
/// Resets the peak to the current live count.
void reset_peak(Pool pool);

/// std::vector whose element count is charged to a pool while it lives.
template <class T>
class TrackedBuffer {
 public:
  TrackedBuffer() = default;
  TrackedBuffer(Pool pool, std::size_t n, const T& value = T{})
      : pool_(pool), data_(n, value) {
    add(pool_, static_cast<std::int64_t>(n));
  }
  TrackedBuffer(const TrackedBuffer&) = delete;
  TrackedBuffer& operator=(const TrackedBuffer&) = delete;
  TrackedBuffer(TrackedBuffer&& other) noexcept
      : pool_(other.pool_), data_(std::move(other.data_)) {
    other.data_.clear();
  }
  TrackedBuffer& operator=(TrackedBuffer&& other) noexcept {
    if (this != &other) {
      release();
      pool_ = other.pool_;
      data_ = std::move(other.data_);
      other.data_.clear();
    }
    return *this;
  }
  ~TrackedBuffer() { release(); }

  T& operator[](std::size_t k) { return data_[k]; }
  const T& operator[](std::size_t k) const { return data_[k]; }
  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }
  std::size_t size() const { return data_.size(); }
  std::span<T> span() { return data_; }
  std::span<const T> span() const { return data_; }
  /// Copies the contents out; the copy is not charged.
  std::vector<T> to_vector() const { return data_; }

 private:
  void release() {
    if (!data_.empty()) sub(pool_, static_cast<std::int64_t>(data_.size()));
    data_.clear();
    data_.shrink_to_fit();
  }

  Pool pool_ = Pool::Boundary;
  std::vector<T> data_;
};

}  // namespace longalign::memstat
