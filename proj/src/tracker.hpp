#pragma once

// Occupancy bookkeeping shared by the two prelimit backends. The backends
// decide which level an event touches; this class owns the counts, the
// event log, the lazily integrated compensators and the grid recording.

#include <span>

#include "jsqd/ctmc.hpp"

namespace jsqd::detail {

class OccupancyTracker {
 public:
  OccupancyTracker(const SystemParams& params, const LatticeChoiceTable& table, const Occupancy& init,
                   std::span<const double> grid, const CtmcOptions& options);

  std::int64_t count(std::size_t i) const {
    if (i == 0) return n_;
    return i <= c_.size() ? c_[i - 1] : 0;
  }
  std::size_t levels() const { return c_.size(); }
  double arrival_rate() const { return arrival_rate_; }
  std::int64_t busy() const { return count(1); }
  double total_rate() const { return arrival_rate_ + static_cast<double>(busy()); }

  /// Records every grid point strictly before t_next. Returns false once the
  /// grid is exhausted (t_next is past t_end).
  bool advance_to(double t_next);

  void arrive(std::size_t level, double t);
  void depart(std::size_t level, double t);

  CtmcRun finish();

 private:
  void flush(std::size_t i, double t);
  void refresh(std::size_t i);
  void ensure_tracked(std::size_t i);
  void record(std::size_t j);
  void accumulate(double from, double to);
  void check_level(std::size_t level);

  SystemParams params_;
  const LatticeChoiceTable& table_;
  std::int64_t n_;
  double arrival_rate_;
  std::span<const double> grid_;
  CtmcOptions options_;
  std::vector<std::int64_t> c_;
  std::vector<std::int64_t> c0_;
  std::int64_t jobs_ = 0;
  std::int64_t jobs0_ = 0;
  double t_ = 0.0;
  std::size_t next_grid_ = 0;

  // Per tracked level (index i-1).
  std::vector<double> arr_rate_;
  std::vector<double> dep_rate_;
  std::vector<double> last_t_;

  CtmcRun run_;
};

}  // namespace jsqd::detail
