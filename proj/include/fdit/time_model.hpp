#pragma once

#include <cstddef>

namespace fdit {

/// Planner time is deterministic: it advances by fixed per-operation charges
/// instead of reading a wall clock, so a run with identical (env, config,
/// seed) replays bit-identically, reported times included. The charges are
/// calibrated so one model second is on the order of one wall second of
/// single-core planning work.
namespace timecost {

inline constexpr double kStateCheckBase = 60e-9;       // per validity check
inline constexpr double kStateCheckPerObstacleDim = 2.0e-9;
inline constexpr double kDistancePerDim = 1.2e-9;
inline constexpr double kQueueOp = 90e-9;              // per push or pop
inline constexpr double kSampleDrawPerDim = 35e-9;     // per rejection attempt
inline constexpr double kForcePairPerDim = 5e-9;
inline constexpr double kRegionQueryBase = 400e-9;
inline constexpr double kRegionQueryPerCandidate = 30e-9;
inline constexpr double kDijkstraRelax = 60e-9;
inline constexpr double kIndexRebuildPerSample = 70e-9;
inline constexpr double kBatchOverhead = 3e-6;

}  // namespace timecost

class VirtualClock {
public:
    explicit VirtualClock(double budget_seconds) : budget_(budget_seconds) {}

    void charge(double seconds) { now_ += seconds; }
    double now() const { return now_; }
    double budget() const { return budget_; }
    bool expired() const { return now_ >= budget_; }

private:
    double now_ = 0.0;
    double budget_;
};

}  // namespace fdit
