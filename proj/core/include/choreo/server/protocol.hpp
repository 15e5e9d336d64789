#pragma once

#include "choreo/common/error.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace choreo {

/// Upper bound on one request line, newline excluded.
inline constexpr size_t kMaxLineBytes = 16u << 20;

enum class Op { Generate, Edit, ImportPose, ListGallery, AddToGallery, GetSequence, Export };

inline constexpr std::array<Op, 7> kAllOps = {
    Op::Generate, Op::Edit, Op::ImportPose, Op::ListGallery, Op::AddToGallery, Op::GetSequence, Op::Export};

std::string_view opName(Op op);
std::optional<Op> parseOp(std::string_view name);

/// Heavy ops run on the FIFO worker; the rest are answered on arrival.
bool isQueuedOp(Op op);

struct Request {
  std::string requestId;
  Op op = Op::ListGallery;
  nlohmann::json params = nlohmann::json::object();
  std::optional<std::uint64_t> seed;
};

/// A line that could not be turned into a Request. `requestId` is set when
/// the envelope got far enough to carry one; `offset` is the byte offset of
/// a JSON syntax error.
struct ProtocolError {
  std::optional<std::string> requestId;
  std::string message;
  std::optional<size_t> offset;
};

std::variant<Request, ProtocolError> parseRequest(std::string_view line);

/// Wire error codes beyond the library's ErrorCode names.
inline constexpr std::string_view kBadRequest = "bad_request";
inline constexpr std::string_view kInternalError = "internal_error";

nlohmann::json okResponse(const std::string& requestId, nlohmann::json payload);
nlohmann::json errorResponse(
    const std::optional<std::string>& requestId,
    std::string_view code,
    const std::string& message,
    std::optional<size_t> offset = std::nullopt);
nlohmann::json errorResponse(const std::string& requestId, const Error& error);
nlohmann::json errorResponse(const ProtocolError& error);

/// Compact single-line serialization plus the terminating newline.
std::string frameMessage(const nlohmann::json& message);

} // namespace choreo
