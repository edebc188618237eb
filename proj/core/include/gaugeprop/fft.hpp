#pragma once

#include <cstddef>
#include <memory>
#include <span>

#include "gaugeprop/special.hpp"

namespace gaugeprop::fft {

/// In-place complex transform of a fixed length on an aligned buffer owned
/// by the plan. Transforms are unnormalized. Planning is serialized
/// internally; execution on distinct plans may run concurrently.
class Plan {
public:
  explicit Plan(std::size_t n);
  ~Plan();
  Plan(Plan&&) noexcept;
  Plan& operator=(Plan&&) noexcept;
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;

  std::size_t size() const noexcept { return n_; }
  std::span<Complex> data() noexcept;

  void forward();
  void backward();

private:
  struct Impl;
  std::size_t n_ = 0;
  std::unique_ptr<Impl> impl_;
};

}  // namespace gaugeprop::fft
