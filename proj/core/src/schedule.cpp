#include "rfl/schedule.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace rfl {

RadiiSchedule RadiiSchedule::from_ratios(std::span<const std::uint64_t> ratios) {
  RadiiSchedule s;
  for (std::size_t j = 0; j < ratios.size(); ++j) {
    const std::uint64_t q = ratios[j];
    if (q <= 100)
      throw ScheduleError(fmt::format(
          "r_{} < r_{}/100 violated (strict inequality): ratio r_{}/r_{} = {} must exceed 100", j + 1,
          j, j, j + 1, q));
    const std::uint64_t prev = s.reciprocals_.back();
    if (prev > std::numeric_limits<std::uint64_t>::max() / q)
      throw ScheduleError(fmt::format("1/r_{} overflows 64-bit integers", j + 1));
    s.ratios_.push_back(q);
    s.reciprocals_.push_back(prev * q);
  }
  return s;
}

RadiiSchedule RadiiSchedule::from_reciprocals(std::span<const std::uint64_t> reciprocals) {
  if (reciprocals.empty() || reciprocals.front() != 1)
    throw ScheduleError("r_0 = 1 violated: the first reciprocal must be 1");
  std::vector<std::uint64_t> ratios;
  for (std::size_t j = 1; j < reciprocals.size(); ++j) {
    if (reciprocals[j] == 0 || reciprocals[j] % reciprocals[j - 1] != 0)
      throw ScheduleError(fmt::format("r_{}/r_{} is not a positive integer", j - 1, j));
    ratios.push_back(reciprocals[j] / reciprocals[j - 1]);
  }
  return from_ratios(ratios);
}

std::uint64_t RadiiSchedule::ratio(int n) const {
  if (ratios_.empty()) throw std::out_of_range("empty schedule has no ratios");
  if (n < 0) throw std::out_of_range("negative level");
  return n < depth() ? ratios_[n] : ratios_.back();
}

std::uint64_t RadiiSchedule::reciprocal(int n) const {
  if (n < 0 || n > depth()) throw std::out_of_range("level outside the schedule");
  return reciprocals_[n];
}

double RadiiSchedule::radius(int n) const { return 1.0 / static_cast<double>(reciprocal(n)); }

double RadiiSchedule::s(int n) const {
  if (n < 1) throw std::out_of_range("s_n is defined for n >= 1");
  if (ratios_.empty()) return 0.0;
  return 4.0 / std::sqrt(static_cast<double>(ratio(n - 1)));
}

double RadiiSchedule::enlarged_radius(int n) const { return (1.0 + s(n + 1)) * radius(n); }

double RadiiSchedule::gap_scale(int n) const {
  if (n < 1) throw std::out_of_range("gap scale is defined for n >= 1");
  return radius(n) * std::sqrt(static_cast<double>(ratio(n - 1)));
}

RadiiSchedule default_schedule() {
  const std::uint64_t ratios[] = {104, 128, 160};
  return RadiiSchedule::from_ratios(ratios);
}

std::string describe(const RadiiSchedule& s) {
  return fmt::format("[{}]", fmt::join(s.ratios(), ", "));
}

}  // namespace rfl
