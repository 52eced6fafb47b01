#include "gtx/file_set.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace gtx {
namespace {

constexpr std::size_t word_count(std::size_t capacity) { return (capacity + 63) / 64; }

}  // namespace

FileSet::FileSet(std::size_t capacity) : capacity_(capacity), words_(word_count(capacity), 0) {}

FileSet::FileSet(std::size_t capacity, std::initializer_list<FileId> members) : FileSet(capacity) {
  for (FileId f : members) insert(f);
}

FileSet::FileSet(std::size_t capacity, std::span<const FileId> members) : FileSet(capacity) {
  for (FileId f : members) insert(f);
}

FileSet FileSet::full(std::size_t capacity) {
  FileSet s(capacity);
  for (auto& w : s.words_) w = ~std::uint64_t{0};
  if (const std::size_t tail = capacity % 64; tail != 0) {
    s.words_.back() = (std::uint64_t{1} << tail) - 1;
  }
  return s;
}

std::size_t FileSet::size() const noexcept {
  std::size_t total = 0;
  for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool FileSet::empty() const noexcept {
  for (auto w : words_) {
    if (w != 0) return false;
  }
  return true;
}

void FileSet::check_index(FileId file) const {
  if (file >= capacity_) {
    throw std::invalid_argument("file index " + std::to_string(file) + " out of range for capacity " +
                                std::to_string(capacity_));
  }
}

bool FileSet::contains(FileId file) const {
  check_index(file);
  return (words_[file / 64] >> (file % 64)) & 1U;
}

void FileSet::insert(FileId file) {
  check_index(file);
  words_[file / 64] |= std::uint64_t{1} << (file % 64);
}

void FileSet::erase(FileId file) {
  check_index(file);
  words_[file / 64] &= ~(std::uint64_t{1} << (file % 64));
}

void FileSet::clear() noexcept {
  for (auto& w : words_) w = 0;
}

void FileSet::require_same_capacity(const FileSet& other) const {
  if (capacity_ != other.capacity_) {
    throw std::invalid_argument("FileSet capacity mismatch: " + std::to_string(capacity_) + " vs " +
                                std::to_string(other.capacity_));
  }
}

FileSet& FileSet::operator|=(const FileSet& other) {
  require_same_capacity(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

FileSet& FileSet::operator&=(const FileSet& other) {
  require_same_capacity(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

FileSet& FileSet::subtract(const FileSet& other) {
  require_same_capacity(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  return *this;
}

bool FileSet::is_subset_of(const FileSet& other) const {
  require_same_capacity(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & ~other.words_[i]) != 0) return false;
  }
  return true;
}

bool FileSet::intersects(const FileSet& other) const {
  require_same_capacity(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & other.words_[i]) != 0) return true;
  }
  return false;
}

std::vector<FileId> FileSet::members() const {
  std::vector<FileId> out;
  out.reserve(size());
  for_each([&](FileId f) { out.push_back(f); });
  return out;
}

}  // namespace gtx
