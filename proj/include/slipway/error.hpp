#pragma once

#include <stdexcept>
#include <string>

namespace slipway {

// One code per contract-level failure. Free-form diagnostics go in the message.
enum class Errc {
  token_budget_exceeded,
  provider_unreachable,
  fixture_miss,
  image_missing,
  runtime_unavailable,
  limit_invalid,
  duplicate_handle,
  already_destroyed,
  container_not_running,
  spawn_failure,
  session_dead,
  framing_corruption,
  clone_failure,
  commit_not_found,
  rate_limited,
  repo_not_found,
  partial_fetch,
  duplicate_doc_id,
  misaligned_inputs,
  parse_failure,
  search_unavailable,
  unsupported_format,
  config_invalid,
  bad_usage,
  io_error,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

// HTTP 403 with a Retry-After header keeps the advised delay.
class RateLimited : public Error {
 public:
  RateLimited(std::string message, int retry_after_sec)
      : Error(Errc::rate_limited, std::move(message)), retry_after_sec_(retry_after_sec) {}

  int retry_after_sec() const { return retry_after_sec_; }

 private:
  int retry_after_sec_;
};

}  // namespace slipway
