#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>

namespace flp {

enum class CheckStatus { Pass, Fail };

/// Arguments that exposed a failure and the canonical non-zero residual.
struct Witness {
  std::string arguments;
  std::string residual;

  friend bool operator==(const Witness&, const Witness&) = default;
};

/// Outcome of one named check. A failing report always carries a witness.
struct CheckReport {
  std::string id;
  CheckStatus status = CheckStatus::Pass;
  std::optional<Witness> witness;
  std::int64_t millis = 0;

  bool passed() const { return status == CheckStatus::Pass; }

  static CheckReport pass(std::string id) { return {std::move(id), CheckStatus::Pass, std::nullopt, 0}; }
  static CheckReport fail(std::string id, std::string arguments, std::string residual) {
    return {std::move(id), CheckStatus::Fail, Witness{std::move(arguments), std::move(residual)}, 0};
  }
};

/// Runs `body` (returning a CheckReport) and stamps the elapsed wall time.
template <class Body>
CheckReport timed(Body&& body) {
  const auto start = std::chrono::steady_clock::now();
  CheckReport report = std::forward<Body>(body)();
  report.millis =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace flp
