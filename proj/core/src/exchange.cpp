#include "gtx/exchange.hpp"

#include <stdexcept>
#include <string>

#include "gtx/errors.hpp"

namespace gtx {

Instance::Instance(std::size_t n, std::size_t m) : n_(n), holdings_(m, FileSet(n)) {}

Instance::Instance(std::size_t n, std::vector<FileSet> holdings) : n_(n), holdings_(std::move(holdings)) {
  for (std::size_t u = 0; u < holdings_.size(); ++u) {
    if (holdings_[u].capacity() != n_) {
      throw std::invalid_argument("holding of user " + std::to_string(u) + " has capacity " +
                                  std::to_string(holdings_[u].capacity()) + ", expected " + std::to_string(n_));
    }
  }
}

void Instance::exchange_in_place(ExchangeEvent e) {
  if (e.i >= m() || e.j >= m() || e.i == e.j) {
    throw std::invalid_argument("invalid exchange (" + std::to_string(e.i) + ", " + std::to_string(e.j) +
                                ") for " + std::to_string(m()) + " users");
  }
  FileSet& a = holdings_[e.i];
  FileSet& b = holdings_[e.j];
  if (!gt_satisfied(a, b)) throw GtViolation(e.i, e.j);
  a |= b;
  b = a;
}

bool gt_satisfied(const FileSet& a, const FileSet& b) {
  if (a.capacity() != b.capacity()) throw std::invalid_argument("gt_satisfied: capacity mismatch");
  const auto wa = a.words();
  const auto wb = b.words();
  bool a_has_extra = false;
  bool b_has_extra = false;
  for (std::size_t k = 0; k < wa.size(); ++k) {
    a_has_extra = a_has_extra || (wa[k] & ~wb[k]) != 0;
    b_has_extra = b_has_extra || (wb[k] & ~wa[k]) != 0;
    if (a_has_extra && b_has_extra) return true;
  }
  return false;
}

Instance exchange(const Instance& state, ExchangeEvent e) {
  Instance next = state;
  next.exchange_in_place(e);
  return next;
}

Instance apply_schedule(const Instance& state, const Schedule& s) {
  Instance cur = state;
  for (std::size_t step = 0; step < s.size(); ++step) {
    try {
      cur.exchange_in_place(s[step]);
    } catch (const GtViolation&) {
      throw GtViolation(s[step].i, s[step].j, step);
    }
  }
  return cur;
}

FileSet achievable_universe(const Instance& state) {
  FileSet all(state.n());
  for (const auto& h : state.holdings()) all |= h;
  return all;
}

FileSet group_universe(const Instance& state, std::span<const UserId> group) {
  FileSet all(state.n());
  for (UserId u : group) all |= state.holding(u);
  return all;
}

std::size_t satisfied_count(const Instance& state, const FileSet& target) {
  if (target.capacity() != state.n()) throw std::invalid_argument("satisfied_count: target capacity mismatch");
  std::size_t count = 0;
  for (const auto& h : state.holdings()) {
    if (target.is_subset_of(h)) ++count;
  }
  return count;
}

std::vector<UserId> satisfied_users(const Instance& state, const FileSet& target) {
  std::vector<UserId> out;
  for (UserId u = 0; u < state.m(); ++u) {
    if (target.is_subset_of(state.holding(u))) out.push_back(u);
  }
  return out;
}

FileSet target_set(const Instance& state, Target target) {
  return target == Target::Complete ? FileSet::full(state.n()) : achievable_universe(state);
}

}  // namespace gtx
