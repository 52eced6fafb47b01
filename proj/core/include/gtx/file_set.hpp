#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace gtx {

using FileId = std::size_t;

/// Fixed-capacity set of file indices in [0, capacity).
///
/// Backed by a packed bit vector; all binary operations require both
/// operands to share the same capacity and throw std::invalid_argument
/// otherwise.
class FileSet {
 public:
  FileSet() = default;
  explicit FileSet(std::size_t capacity);
  FileSet(std::size_t capacity, std::initializer_list<FileId> members);
  FileSet(std::size_t capacity, std::span<const FileId> members);

  static FileSet full(std::size_t capacity);

  std::size_t capacity() const noexcept { return capacity_; }
  std::size_t size() const noexcept;
  bool empty() const noexcept;

  bool contains(FileId file) const;
  void insert(FileId file);
  void erase(FileId file);
  void clear() noexcept;

  FileSet& operator|=(const FileSet& other);
  FileSet& operator&=(const FileSet& other);
  /// Set difference in place: removes every member of `other`.
  FileSet& subtract(const FileSet& other);

  friend FileSet operator|(FileSet a, const FileSet& b) { return a |= b; }
  friend FileSet operator&(FileSet a, const FileSet& b) { return a &= b; }
  friend bool operator==(const FileSet& a, const FileSet& b) = default;

  bool is_subset_of(const FileSet& other) const;
  bool intersects(const FileSet& other) const;

  /// Members in ascending order.
  std::vector<FileId> members() const;

  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::span<std::uint64_t> words() noexcept { return words_; }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        const int bit = __builtin_ctzll(bits);
        fn(w * 64 + static_cast<std::size_t>(bit));
        bits &= bits - 1;
      }
    }
  }

 private:
  void require_same_capacity(const FileSet& other) const;
  void check_index(FileId file) const;

  std::size_t capacity_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace gtx
