#include "choreo/server/protocol.hpp"

namespace choreo {

namespace {

constexpr std::array<std::pair<Op, std::string_view>, 7> kOpNames = {{
    {Op::Generate, "generate"},
    {Op::Edit, "edit"},
    {Op::ImportPose, "import_pose"},
    {Op::ListGallery, "list_gallery"},
    {Op::AddToGallery, "add_to_gallery"},
    {Op::GetSequence, "get_sequence"},
    {Op::Export, "export"},
}};

} // namespace

std::string_view opName(Op op) {
  for (const auto& [o, name] : kOpNames) {
    if (o == op) {
      return name;
    }
  }
  return "unknown";
}

std::optional<Op> parseOp(std::string_view name) {
  for (const auto& [o, n] : kOpNames) {
    if (n == name) {
      return o;
    }
  }
  return std::nullopt;
}

bool isQueuedOp(Op op) {
  return op == Op::Generate || op == Op::Edit;
}

std::variant<Request, ProtocolError> parseRequest(std::string_view line) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    // parse_error::byte is 1-based and points one past the offending byte.
    const size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    return ProtocolError{std::nullopt, "malformed JSON", offset};
  }
  if (!doc.is_object()) {
    return ProtocolError{std::nullopt, "request must be a JSON object", std::nullopt};
  }
  std::optional<std::string> requestId;
  const auto id = doc.find("request_id");
  if (id != doc.end() && id->is_string() && !id->get<std::string>().empty()) {
    requestId = id->get<std::string>();
  }
  const auto bad = [&](std::string message) {
    return ProtocolError{requestId, std::move(message), std::nullopt};
  };
  if (!requestId) {
    return bad("request_id must be a nonempty string");
  }
  const auto op = doc.find("op");
  if (op == doc.end() || !op->is_string()) {
    return bad("op must be a string");
  }
  const auto parsed = parseOp(op->get<std::string>());
  if (!parsed) {
    return bad("unknown op: " + op->get<std::string>());
  }
  Request request{*requestId, *parsed, nlohmann::json::object(), std::nullopt};
  if (const auto params = doc.find("params"); params != doc.end()) {
    if (!params->is_object()) {
      return bad("params must be an object");
    }
    request.params = *params;
  }
  if (const auto seed = doc.find("seed"); seed != doc.end() && !seed->is_null()) {
    if (!seed->is_number_unsigned()) {
      return bad("seed must be a non-negative integer");
    }
    request.seed = seed->get<std::uint64_t>();
  }
  for (const auto& [key, value] : doc.items()) {
    if (key != "request_id" && key != "op" && key != "params" && key != "seed") {
      return bad("unknown envelope field: " + key);
    }
  }
  return request;
}

nlohmann::json okResponse(const std::string& requestId, nlohmann::json payload) {
  return {{"request_id", requestId}, {"status", "ok"}, {"payload", std::move(payload)}};
}

nlohmann::json errorResponse(
    const std::optional<std::string>& requestId,
    std::string_view code,
    const std::string& message,
    std::optional<size_t> offset) {
  nlohmann::json payload = {{"code", code}, {"message", message}};
  if (offset) {
    payload["offset"] = *offset;
  }
  return {
      {"request_id", requestId ? nlohmann::json(*requestId) : nlohmann::json(nullptr)},
      {"status", "error"},
      {"payload", std::move(payload)}};
}

nlohmann::json errorResponse(const std::string& requestId, const Error& error) {
  return errorResponse(requestId, errorCodeName(error.code()), error.what());
}

nlohmann::json errorResponse(const ProtocolError& error) {
  return errorResponse(error.requestId, kBadRequest, error.message, error.offset);
}

std::string frameMessage(const nlohmann::json& message) {
  // Replace invalid UTF-8 rather than throwing on echoed client strings.
  return message.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) + "\n";
}

} // namespace choreo
