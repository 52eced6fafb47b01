#include "gtx/errors.hpp"

namespace gtx {
namespace {

std::string gt_message(std::size_t i, std::size_t j, std::optional<std::size_t> step) {
  std::string msg = "GT criterion violated for exchange (" + std::to_string(i) + ", " + std::to_string(j) + ")";
  if (step) msg += " at step " + std::to_string(*step);
  return msg;
}

std::string division_message(const std::vector<std::size_t>& group, int level) {
  std::string msg = "no valid division at level " + std::to_string(level) + " for group [";
  for (std::size_t k = 0; k < group.size(); ++k) {
    if (k) msg += ",";
    msg += std::to_string(group[k]);
  }
  return msg + "]";
}

}  // namespace

GtViolation::GtViolation(std::size_t i, std::size_t j, std::optional<std::size_t> step)
    : std::runtime_error(gt_message(i, j, step)), i_(i), j_(j), step_(step) {}

NoValidDivision::NoValidDivision(std::vector<std::size_t> group, int level)
    : std::runtime_error(division_message(group, level)), group_(std::move(group)), level_(level) {}

}  // namespace gtx
