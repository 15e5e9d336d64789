#include "acceptance.hpp"
#include "wire.hpp"

#include "choreo/editing/style_library.hpp"

#include "transcript.hpp"

using nlohmann::json;

namespace choreo::acceptance {

namespace {

const std::vector<std::string> kStyles = {"angry", "childlike", "depressed", "happy", "proud", "strutting"};
const std::vector<std::string> kParts = {"upper_body", "lower_body", "left_arm", "right_arm", "left_leg", "right_leg"};

// "…; valid <what>: a, b, c" -> {a, b, c}
std::vector<std::string> listedNames(const std::string& message, const std::string& marker) {
  const size_t at = message.find(marker);
  if (at == std::string::npos) {
    return {};
  }
  std::vector<std::string> out;
  std::string rest = message.substr(at + marker.size());
  size_t pos = 0;
  while (true) {
    const size_t comma = rest.find(", ", pos);
    out.push_back(rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
    if (comma == std::string::npos) {
      return out;
    }
    pos = comma + 2;
  }
}

std::string errorMessage(const json& r) {
  return r.at("payload").value("message", "");
}

} // namespace

Criterion interfaceQuantities() {
  return {"interface_quantities", 60, [](Checks& c) {
            test::TestServer server;
            auto client = server.connect();
            Session s(*client);

            // Three variants, 10 s cap = 200 frames.
            const json gen = s.call("generate", {{"prompt", "happy wave left arm"}, {"duration_s", 10.0}}, 1);
            c.expect(Session::ok(gen), "generate 10 s succeeds");
            const json ids = gen.at("payload").at("ids");
            c.expect(ids.size() == 3, "generate returns exactly 3 variants");
            std::vector<FeatureMatrix> variants;
            for (const auto& id : ids) {
              variants.push_back(s.frames(id));
              c.expect(variants.back().rows() == 200, "10 s variant has 200 frames");
            }
            c.expect(variants.size() == 3 && variants[0] != variants[1] && variants[1] != variants[2] &&
                         variants[0] != variants[2],
                     "the 3 variants differ");
            for (double over : {10.01, 10.5, 60.0}) {
              const json r = s.call("generate", {{"prompt", "spin in place"}, {"duration_s", over}});
              c.expect(!Session::ok(r) && r.at("payload").at("code") == "invalid_params" &&
                           errorMessage(r).find("duration cap exceeded") != std::string::npos,
                       "duration " + std::to_string(over) + " s rejected with 'duration cap exceeded'");
            }
            c.note("variants", ids.size());

            // Extend: +100 frames per call, repeatable, prefix kept.
            const std::string a = ids[0];
            std::string current = a;
            FeatureMatrix previous = variants[0];
            for (int call = 1; call <= 3; ++call) {
              const json e = s.call("edit", {{"base_id", current}, {"edit", {{"kind", "extend"}, {"seconds", 5.0}}}}, 10 + call);
              c.expect(Session::ok(e), "extend call succeeds");
              current = e.at("payload").at("id");
              const FeatureMatrix now = s.frames(current);
              c.expect(now.rows() == previous.rows() + 100, "extend adds exactly 100 frames (call " + std::to_string(call) + ")");
              c.expect(now.rows() >= previous.rows() && now.topRows(previous.rows()) == previous, "extend keeps its input bit-for-bit");
              previous = now;
            }
            c.note("extended_frames", previous.rows());

            // Blend: F_A + 100 + F_B; the 40-frame context on each side is the inputs' own frames.
            const json genB = s.call("generate", {{"prompt", "strutting side step"}, {"duration_s", 8.0}}, 2);
            const std::string b = genB.at("payload").at("ids")[0];
            const FeatureMatrix A = variants[0];
            const FeatureMatrix B = s.frames(b);
            const json bl = s.call("edit", {{"base_id", a}, {"edit", {{"kind", "blend"}, {"other_id", b}}}}, 3);
            c.expect(Session::ok(bl), "blend succeeds");
            const FeatureMatrix out = s.frames(bl.at("payload").at("id"));
            c.expect(out.rows() == 200 + 100 + 160, "blend length = F_A + 100 + F_B (460)");
            if (out.rows() == 460) {
              c.expect(out.topRows(200) == A, "blend keeps A");
              c.expect(out.bottomRows(160) == B, "blend keeps B");
              c.expect(out.middleRows(160, 40) == A.bottomRows(40), "last 40 frames of A are known context");
              c.expect(out.middleRows(300, 40) == B.topRows(40), "first 40 frames of B are known context");
            }
            const json gen40 = s.call("generate", {{"prompt", "spin in place"}, {"duration_s", 2.0}}, 4);
            const json gen39 = s.call("generate", {{"prompt", "spin in place"}, {"duration_s", 1.95}}, 4);
            const json ok40 = s.call("edit", {{"base_id", a}, {"edit", {{"kind", "blend"}, {"other_id", gen40.at("payload").at("ids")[0]}}}});
            c.expect(Session::ok(ok40) && ok40.at("payload").at("frames") == 340, "blend with a 40-frame B gives 200 + 100 + 40");
            const json short39 = s.call("edit", {{"base_id", a}, {"edit", {{"kind", "blend"}, {"other_id", gen39.at("payload").at("ids")[0]}}}});
            c.expect(!Session::ok(short39) && errorMessage(short39).find("sequence too short to blend") != std::string::npos,
                     "blend with a 39-frame B rejected with 'sequence too short to blend'");
            c.note("blend_frames", out.rows());

            // Style and body-part lists: exactly six names each, all usable.
            const json badStyle = s.call("edit", {{"base_id", a}, {"edit", {{"kind", "style"}, {"style", "sleepy"}}}});
            c.expect(listedNames(errorMessage(badStyle), "valid styles: ") == kStyles, "style list is exactly the six names");
            for (const auto& style : kStyles) {
              c.expect(Session::ok(s.call("edit", {{"base_id", a}, {"edit", {{"kind", "style"}, {"style", style}}}})),
                       "style " + style + " accepted");
            }
            const json badPart = s.call("edit", {{"base_id", a}, {"edit", {{"kind", "partial_body"}, {"part", "torso"}, {"prompt", "x"}}}});
            c.expect(listedNames(errorMessage(badPart), "valid parts: ") == kParts, "body-part list is exactly the six names");
            for (const auto& part : kParts) {
              c.expect(Session::ok(s.call("edit", {{"base_id", a}, {"edit", {{"kind", "partial_body"}, {"part", part}, {"prompt", "kick left leg"}}}}, 5)),
                       "part " + part + " accepted");
            }
            c.note("styles", kStyles.size());
            c.note("parts", kParts.size());
          }};
}

} // namespace choreo::acceptance
