#pragma once

// Radii r_0 = 1 > r_1 > ... carried exactly as integer ratios r_j / r_{j+1}.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rfl {

class ScheduleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class RadiiSchedule {
 public:
  RadiiSchedule() = default;

  // ratios[j] = r_j / r_{j+1}. Each must exceed 100 strictly.
  static RadiiSchedule from_ratios(std::span<const std::uint64_t> ratios);
  // reciprocals[j] = 1 / r_j, starting with 1.
  static RadiiSchedule from_reciprocals(std::span<const std::uint64_t> reciprocals);

  // Number of levels below the root the schedule describes.
  int depth() const { return static_cast<int>(ratios_.size()); }

  const std::vector<std::uint64_t>& ratios() const { return ratios_; }
  const std::vector<std::uint64_t>& reciprocals() const { return reciprocals_; }

  // r_n / r_{n+1}. Past the end of the schedule the last ratio repeats.
  std::uint64_t ratio(int n) const;
  // 1 / r_n as an exact integer (n <= depth()).
  std::uint64_t reciprocal(int n) const;
  double radius(int n) const;
  // s_n = 4 sqrt(r_n / r_{n-1}) for n >= 1; 0 if the schedule is empty.
  double s(int n) const;
  // (1 + s_{n+1}) r_n
  double enlarged_radius(int n) const;
  // sqrt(r_{n-1} r_n), the separation scale of level n >= 1.
  double gap_scale(int n) const;

  bool operator==(const RadiiSchedule&) const = default;

 private:
  std::vector<std::uint64_t> ratios_;
  std::vector<std::uint64_t> reciprocals_{1};
};

// The built-in desk-scale schedule.
RadiiSchedule default_schedule();

std::string describe(const RadiiSchedule& s);

}  // namespace rfl
