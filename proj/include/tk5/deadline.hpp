#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <memory>
#include <stdexcept>

namespace tk5 {

class SearchTimeout : public std::runtime_error {
 public:
  SearchTimeout() : std::runtime_error("search deadline expired") {}
};

/// Cooperative cancellation point for long searches. Copies share the same
/// cancel flag, so cancelling one cancels every derived deadline.
class Deadline {
 public:
  using Clock = std::chrono::steady_clock;

  static Deadline never() { return Deadline(); }

  static Deadline in(std::chrono::milliseconds ms) {
    Deadline d;
    d.until_ = Clock::now() + ms;
    d.bounded_ = true;
    return d;
  }

  static Deadline in_ms(long long ms) { return in(std::chrono::milliseconds(ms)); }

  bool bounded() const { return bounded_; }

  bool expired() const {
    if (cancel_->load(std::memory_order_relaxed)) return true;
    return bounded_ && Clock::now() >= until_;
  }

  /// Throws SearchTimeout once expired. Reads the clock only every 256 calls.
  void check() const {
    if ((ticks_->fetch_add(1, std::memory_order_relaxed) + 1) % 256 != 0) {
      if (cancel_->load(std::memory_order_relaxed)) throw SearchTimeout();
      return;
    }
    if (expired()) throw SearchTimeout();
  }

  void cancel() const { cancel_->store(true); }

  std::chrono::milliseconds remaining() const {
    if (!bounded_) return std::chrono::milliseconds::max();
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(until_ - Clock::now());
    return std::max(left, std::chrono::milliseconds(0));
  }

  /// A deadline expiring after the given fraction of the time left here,
  /// sharing this deadline's cancel flag.
  Deadline fraction(double f) const {
    Deadline d = *this;
    if (bounded_) {
      auto left = until_ - Clock::now();
      if (left < Clock::duration::zero()) left = Clock::duration::zero();
      d.until_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(left * f);
    }
    d.ticks_ = std::make_shared<std::atomic<unsigned>>(0);
    return d;
  }

 private:
  Deadline() = default;

  Clock::time_point until_{};
  bool bounded_ = false;
  std::shared_ptr<std::atomic<bool>> cancel_ = std::make_shared<std::atomic<bool>>(false);
  std::shared_ptr<std::atomic<unsigned>> ticks_ = std::make_shared<std::atomic<unsigned>>(0);
};

}  // namespace tk5
