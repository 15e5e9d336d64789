#include "choreo/server/service.hpp"

#include "choreo/common/base64.hpp"
#include "choreo/exporter/gltf.hpp"
#include "choreo/exporter/render.hpp"
#include "choreo/motion/motion_json.hpp"

#include <cmath>
#include <initializer_list>
#include <set>

namespace choreo {

namespace {

[[noreturn]] void invalid(const std::string& message) {
  fail(ErrorCode::InvalidArgument, message);
}

// Typed access to an op's params object; unknown keys are rejected so
// client typos surface instead of silently falling back to defaults.
class Params {
 public:
  Params(const nlohmann::json& params, std::initializer_list<std::string_view> allowed) : params_(params) {
    if (!params.is_object()) {
      invalid("params must be an object");
    }
    const std::set<std::string_view> keys(allowed);
    for (const auto& [key, value] : params.items()) {
      if (!keys.count(key)) {
        invalid("unknown parameter: " + key);
      }
    }
  }

  const nlohmann::json* find(const char* key) const {
    const auto it = params_.find(key);
    return it == params_.end() || it->is_null() ? nullptr : &*it;
  }

  std::string string(const char* key) const {
    const auto* v = find(key);
    if (!v || !v->is_string() || v->get<std::string>().empty()) {
      invalid(std::string(key) + " must be a nonempty string");
    }
    return v->get<std::string>();
  }

  std::optional<std::string> optionalString(const char* key) const {
    return find(key) ? std::optional<std::string>(string(key)) : std::nullopt;
  }

  double number(const char* key) const {
    const auto* v = find(key);
    if (!v || !v->is_number()) {
      invalid(std::string(key) + " must be a number");
    }
    return v->get<double>();
  }

  double number(const char* key, double fallback) const {
    return find(key) ? number(key) : fallback;
  }

  int integer(const char* key, int fallback) const {
    const auto* v = find(key);
    if (!v) {
      return fallback;
    }
    if (!v->is_number_integer()) {
      invalid(std::string(key) + " must be an integer");
    }
    return v->get<int>();
  }

  const nlohmann::json& object(const char* key) const {
    const auto* v = find(key);
    if (!v || !v->is_object()) {
      invalid(std::string(key) + " must be an object");
    }
    return *v;
  }

 private:
  const nlohmann::json& params_;
};

nlohmann::json sequenceSummary(const std::string& id, const MotionSequence& motion) {
  return {{"id", id}, {"frames", motion.numFrames()}, {"duration_s", motion.durationSeconds()}};
}

std::string rootPrompt(const SequenceRecord& record) {
  const ProvenanceEntry& root = record.provenance.front();
  return root.kind == ProvenanceKind::Generate ? root.promptOrParams : std::string();
}

} // namespace

EditCommand parseEditCommand(const nlohmann::json& edit) {
  if (!edit.is_object() || !edit.contains("kind") || !edit["kind"].is_string()) {
    invalid("edit.kind must be one of extend, style, partial_body, blend");
  }
  const std::string kind = edit["kind"].get<std::string>();
  if (kind == "extend") {
    const Params p(edit, {"kind", "seconds", "prompt"});
    ExtendEdit out{p.number("seconds", kMaxExtensionSeconds), p.optionalString("prompt")};
    if (!(out.seconds > 0.0 && out.seconds <= kMaxExtensionSeconds)) {
      invalid("extension seconds must be in (0, 5]");
    }
    return out;
  }
  if (kind == "style") {
    const Params p(edit, {"kind", "style"});
    const std::string name = p.string("style");
    const auto style = parseStyle(name);
    if (!style) {
      invalid("unknown style '" + name + "'; valid styles: " + validStyleNames());
    }
    return StyleEdit{*style};
  }
  if (kind == "partial_body") {
    const Params p(edit, {"kind", "part", "prompt"});
    const std::string name = p.string("part");
    const auto part = parseBodyPart(name);
    if (!part) {
      invalid("unknown body part '" + name + "'; valid parts: " + validBodyPartNames());
    }
    return PartialBodyEdit{*part, p.string("prompt")};
  }
  if (kind == "blend") {
    const Params p(edit, {"kind", "other_id"});
    return BlendEdit{p.string("other_id")};
  }
  invalid("edit.kind must be one of extend, style, partial_body, blend");
}

std::string describeEdit(const EditCommand& command) {
  nlohmann::json out;
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, ExtendEdit>) {
          out = {{"seconds", c.seconds}};
          if (c.prompt) {
            out["prompt"] = *c.prompt;
          }
        } else if constexpr (std::is_same_v<T, StyleEdit>) {
          out = {{"style", styleName(c.style)}};
        } else if constexpr (std::is_same_v<T, PartialBodyEdit>) {
          out = {{"part", bodyPartName(c.part)}, {"prompt", c.prompt}};
        } else {
          out = {{"other_id", c.otherId}};
        }
      },
      command);
  return out.dump();
}

Service::Service(const Engine& engine, SequenceStore& store, std::uint64_t defaultSeed)
    : engine_(engine), store_(store), defaultSeed_(defaultSeed) {}

nlohmann::json Service::execute(const Request& request) const {
  const std::uint64_t seed = request.seed.value_or(defaultSeed_);
  switch (request.op) {
    case Op::Generate:
      return generate(request.params, seed);
    case Op::Edit:
      return edit(request.params, seed);
    case Op::ImportPose:
      return importPose(request.params);
    case Op::ListGallery:
      return listGallery(request.params);
    case Op::AddToGallery:
      return addToGallery(request.params);
    case Op::GetSequence:
      return getSequence(request.params);
    case Op::Export:
      return exportSequence(request.params);
  }
  invalid("unknown op");
}

nlohmann::json Service::generate(const nlohmann::json& params, std::uint64_t seed) const {
  const Params p(params, {"prompt", "duration_s"});
  const std::string prompt = p.string("prompt");
  const double duration = p.number("duration_s", kMaxGenerationSeconds);
  const auto variants = engine_.generateVariants(prompt, duration, seed);

  nlohmann::json ids = nlohmann::json::array();
  for (size_t i = 0; i < variants.size(); ++i) {
    SequenceRecord record{
        "", variants[i], {{ProvenanceKind::Generate, prompt, {}, seed + i}}, currentTimestamp(), false};
    ids.push_back(store_.put(std::move(record)));
  }
  return {
      {"ids", std::move(ids)},
      {"frames", variants.front().numFrames()},
      {"duration_s", variants.front().durationSeconds()}};
}

nlohmann::json Service::edit(const nlohmann::json& params, std::uint64_t seed) const {
  const Params p(params, {"base_id", "edit"});
  const std::string baseId = p.string("base_id");
  const EditCommand command = parseEditCommand(p.object("edit"));
  const SequenceRecord base = store_.get(baseId);

  ProvenanceEntry entry{ProvenanceKind::Extend, describeEdit(command), {baseId}, seed};
  const MotionSequence result = std::visit(
      [&](const auto& c) -> MotionSequence {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, ExtendEdit>) {
          entry.kind = ProvenanceKind::Extend;
          return engine_.extend(base.motion, c.seconds, c.prompt.value_or(rootPrompt(base)), seed);
        } else if constexpr (std::is_same_v<T, StyleEdit>) {
          entry.kind = ProvenanceKind::Style;
          return engine_.styleTransfer(base.motion, c.style);
        } else if constexpr (std::is_same_v<T, PartialBodyEdit>) {
          entry.kind = ProvenanceKind::PartialBody;
          return engine_.partialBodyEdit(base.motion, c.part, c.prompt, seed);
        } else {
          entry.kind = ProvenanceKind::Blend;
          entry.parentIds.push_back(c.otherId);
          const SequenceRecord other = store_.get(c.otherId);
          return engine_.blend(base.motion, other.motion, seed);
        }
      },
      command);

  std::vector<ProvenanceEntry> provenance = base.provenance;
  provenance.push_back(std::move(entry));
  const std::string id =
      store_.put(SequenceRecord{"", result, std::move(provenance), currentTimestamp(), false});
  return sequenceSummary(id, result);
}

nlohmann::json Service::importPose(const nlohmann::json& params) const {
  const Params p(params, {"motion_json", "name"});
  const auto* doc = p.find("motion_json");
  if (!doc) {
    invalid("motion_json is required");
  }
  // Accept the document inline or as the text of a .json file.
  const MotionSequence motion = doc->is_string()
                                    ? motionFromJsonString(doc->get<std::string>(), engine_.skeleton())
                                    : motionFromJson(*doc, engine_.skeleton());
  const std::string name = p.find("name") ? p.string("name") : std::string();
  const std::string id = store_.put(
      SequenceRecord{"", motion, {{ProvenanceKind::Import, name, {}, 0}}, currentTimestamp(), false});
  return sequenceSummary(id, motion);
}

nlohmann::json Service::listGallery(const nlohmann::json& params) const {
  const Params p(params, {});
  nlohmann::json items = nlohmann::json::array();
  for (const auto& s : store_.listGallery()) {
    items.push_back({{"id", s.id}, {"thumbnail", s.thumbnail}, {"duration_s", s.durationSeconds}});
  }
  return {{"items", std::move(items)}};
}

nlohmann::json Service::addToGallery(const nlohmann::json& params) const {
  const Params p(params, {"id"});
  const std::string id = p.string("id");
  store_.addToGallery(id);
  return {{"id", id}, {"in_gallery", true}};
}

nlohmann::json Service::getSequence(const nlohmann::json& params) const {
  const Params p(params, {"id"});
  return recordToJson(store_.get(p.string("id")), engine_.skeleton());
}

nlohmann::json Service::exportSequence(const nlohmann::json& params) const {
  const Params p(params, {"id", "format", "every_k"});
  const std::string id = p.string("id");
  const std::string format = p.string("format");
  const int everyK = p.integer("every_k", 1);
  if (p.find("every_k") && format != "frames") {
    invalid("every_k applies to the frames format only");
  }
  if (format != "gltf" && format != "motion_json" && format != "frames" && format != "thumbnail") {
    invalid("format must be one of gltf, motion_json, frames, thumbnail");
  }
  const SequenceRecord record = store_.get(id);
  const Skeleton& skeleton = engine_.skeleton();
  if (format == "gltf") {
    return {{"format", format}, {"file_name", id + ".gltf"}, {"content", exportGltf(record.motion, skeleton, id)}};
  }
  if (format == "motion_json") {
    return {{"format", format}, {"file_name", id + ".json"}, {"content", motionToJson(record.motion, skeleton)}};
  }
  if (format == "thumbnail") {
    const auto png = renderFramePng(skeleton, record.motion.frame(0));
    return {{"format", format}, {"file_name", id + ".png"}, {"data_base64", base64Encode(png)}};
  }
  const FrameExport frames = exportFrames(record.motion, everyK, skeleton);
  nlohmann::json files = nlohmann::json::array();
  for (const auto& f : frames.frames) {
    files.push_back({{"name", f.fileName}, {"data_base64", base64Encode(f.png)}});
  }
  return {{"format", format}, {"manifest", frames.manifest}, {"files", std::move(files)}};
}

} // namespace choreo
