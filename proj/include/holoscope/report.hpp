#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include "json.hpp"

namespace holoscope {

struct Check {
  std::string name;
  std::string paper_ref;
  std::string expected;
  std::string observed;
  bool pass = false;
};

namespace detail {

template <class T>
std::string show(const T& v) {
  if constexpr (std::is_same_v<T, bool>) {
    return v ? "true" : "false";
  } else if constexpr (std::is_convertible_v<T, std::string>) {
    return std::string(v);
  } else {
    std::ostringstream os;
    os << v;
    return os.str();
  }
}

}  // namespace detail

class VerificationReport {
 public:
  explicit VerificationReport(std::string command = {}) : command_(std::move(command)) {}

  const std::string& command() const noexcept { return command_; }
  const std::vector<Check>& checks() const noexcept { return checks_; }
  std::int64_t runtime_ms() const noexcept { return runtime_ms_; }
  void set_runtime_ms(std::int64_t ms) { runtime_ms_ = ms; }

  // Records expected == observed.
  template <class A, class B>
  bool expect(const std::string& name, const std::string& ref, const A& expected, const B& observed) {
    const bool ok = expected == observed;
    checks_.push_back({name, ref, detail::show(expected), detail::show(observed), ok});
    return ok;
  }

  bool record(const std::string& name, const std::string& ref, const std::string& expected,
              const std::string& observed, bool ok) {
    checks_.push_back({name, ref, expected, observed, ok});
    return ok;
  }

  void append(const std::vector<Check>& more) { checks_.insert(checks_.end(), more.begin(), more.end()); }

  bool pass() const {
    for (const auto& c : checks_)
      if (!c.pass) return false;
    return true;
  }

  // Deterministic part only; runtime is kept out so identical inputs give identical bytes.
  nlohmann::ordered_json to_json(bool with_runtime = false) const {
    nlohmann::ordered_json j;
    j["command"] = command_;
    j["pass"] = pass();
    auto& arr = j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks_)
      arr.push_back({{"name", c.name},
                     {"paper_ref", c.paper_ref},
                     {"expected", c.expected},
                     {"observed", c.observed},
                     {"pass", c.pass}});
    if (with_runtime) j["runtime_ms"] = runtime_ms_;
    return j;
  }

 private:
  std::string command_;
  std::vector<Check> checks_;
  std::int64_t runtime_ms_ = 0;
};

}  // namespace holoscope
