#include "acceptance.hpp"
#include "wire.hpp"

#include "choreo/gallery/store.hpp"
#include "choreo/model/checkpoint.hpp"
#include "choreo/model/recipes.hpp"
#include "choreo/server/protocol.hpp"

#include "cli_process.hpp"
#include "fixtures.hpp"
#include "transcript.hpp"

#include <csignal>
#include <filesystem>
#include <functional>
#include <map>
#include <regex>
#include <set>

using nlohmann::json;
namespace fs = std::filesystem;

namespace choreo::acceptance {

namespace {

void goldenReplay(Checks& c) {
  std::set<std::string> opsCovered;
  int transcripts = 0;
  int exchanges = 0;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(CHOREO_GOLDEN_DIR)) {
    if (e.path().extension() == ".txt") {
      files.push_back(e.path());
    }
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    const test::Transcript t = test::Transcript::load(f);
    for (const auto& [request, response] : t.exchanges) {
      // Requests may hold unquoted fixture placeholders, so they are not always valid JSON.
      static const std::regex opField(R"re("op":"([a-z_]+)")re");
      std::smatch m;
      const json r = json::parse(response, nullptr, false);
      if (std::regex_search(request, m, opField) && r.is_object() && r.value("status", "") == "ok") {
        opsCovered.insert(m[1].str());
      }
    }
    const auto mismatches = test::replay(t);
    c.expect(mismatches.empty(), "golden " + f.filename().string() + " replays byte-identical");
    for (const auto& m : mismatches) {
      c.info(f.filename().string() + " exchange " + std::to_string(m.exchange) + ": expected " +
             m.expected.substr(0, 200) + " got " + m.actual.substr(0, 200));
    }
    ++transcripts;
    exchanges += static_cast<int>(t.exchanges.size());
  }
  for (Op op : kAllOps) {
    c.expect(opsCovered.count(std::string(opName(op))) == 1, "a golden transcript exercises " + std::string(opName(op)));
  }
  c.note("transcripts", transcripts);
  c.note("exchanges", exchanges);
}

// Responses by request id, so answers interleaved on one connection can be awaited.
class Mailbox {
 public:
  explicit Mailbox(test::WireClient& client) : client_(client) {}
  json await(const std::string& id) {
    while (!box_.count(id)) {
      const json m = client_.receive();
      box_[m.value("request_id", "")] = m;
    }
    return box_.at(id);
  }

 private:
  test::WireClient& client_;
  std::map<std::string, json> box_;
};

void fifoOrdering(Checks& c) {
  test::TestServer server;
  auto a = server.connect();
  auto b = server.connect();
  Mailbox boxA(*a);
  Mailbox boxB(*b);
  std::vector<std::string> sent;
  // A light op on the same connection is answered on arrival, after the
  // preceding generate was enqueued: its answer fixes the enqueue order.
  for (int i = 0; i < 10; ++i) {
    for (auto [client, box, tag] : {std::tuple{a.get(), &boxA, "a"}, std::tuple{b.get(), &boxB, "b"}}) {
      const std::string id = std::string(tag) + std::to_string(i);
      client->send({{"request_id", id}, {"op", "generate"}, {"params", {{"prompt", "proud kick left leg"}, {"duration_s", 1.0}}}});
      client->send({{"request_id", id + "-barrier"}, {"op", "list_gallery"}});
      box->await(id + "-barrier");
      sent.push_back(id);
    }
  }
  std::vector<std::string> putOrder;
  bool ticketsInOrder = true;
  for (size_t k = 0; k < sent.size(); ++k) {
    const json r = (sent[k][0] == 'a' ? boxA : boxB).await(sent[k]);
    ticketsInOrder = ticketsInOrder && Session::ok(r) && r.at("payload").at("ticket") == k;
    if (Session::ok(r)) {
      for (const auto& id : r.at("payload").at("ids")) {
        putOrder.push_back(id);
      }
    }
  }
  c.expect(ticketsInOrder, "2 connections x 10 generates execute in enqueue order (tickets 0..19)");
  c.expect(server.store().ids() == putOrder, "store insertion order matches the FIFO order");
}

void killAndReload(Checks& c) {
#ifndef CHOREO_CLI_PATH
  c.expect(false, "choreo CLI was not built");
#else
  test::TempDir dir;
  const fs::path model = dir.path() / "tiny.ckpt";
  saveCheckpoint(model, test::tinyTrained().training.model, recipeMetadata(tinyRecipe()));
  const fs::path storeDir = dir.path() / "store";

  std::vector<std::string> ids;
  std::map<std::string, json> before;
  json galleryBefore;
  {
    test::ServeProcess serve(CHOREO_CLI_PATH, storeDir.string(), model.string(), 0);
    test::WireClient client("127.0.0.1", serve.port);
    Session s(client);
    const json gen = s.call("generate", {{"prompt", "childlike torso bounce"}, {"duration_s", 2.5}}, 4);
    for (const auto& id : gen.at("payload").at("ids")) {
      ids.push_back(id);
    }
    const auto edit = [&](const std::string& base, json e, std::uint64_t seed) {
      const json r = s.call("edit", {{"base_id", base}, {"edit", std::move(e)}}, seed);
      c.expect(Session::ok(r), "edit before the kill succeeds");
      ids.push_back(r.at("payload").at("id"));
      return ids.back();
    };
    const std::string ext = edit(ids[0], {{"kind", "extend"}, {"seconds", 1.0}}, 1);
    const std::string styled = edit(ext, {{"kind", "style"}, {"style", "happy"}}, 2);
    const std::string part = edit(styled, {{"kind", "partial_body"}, {"part", "right_leg"}, {"prompt", "kick right leg"}}, 3);
    edit(part, {{"kind", "blend"}, {"other_id", ids[1]}}, 4);
    const json imported = s.call("import_pose", {{"motion_json", test::readFile(test::fixtureDir() / "motion" / "pose_4f.json")}});
    ids.push_back(imported.at("payload").at("id"));
    s.call("add_to_gallery", {{"id", ids.back()}});
    s.call("add_to_gallery", {{"id", styled}});
    for (const auto& id : ids) {
      before[id] = s.record(id);
    }
    galleryBefore = s.call("list_gallery", json::object()).at("payload");
    // Leave a long job in flight so the kill lands mid-write at worst.
    client.send({{"request_id", "inflight"}, {"op", "generate"}, {"params", {{"prompt", "spin in place"}, {"duration_s", 10.0}}}});
    serve.process.kill(SIGKILL);
  }

  std::vector<LoadIssue> issues;
  const SequenceStore onDisk = SequenceStore::load(storeDir, &issues);
  c.expect(issues.empty(), "every record file on disk loads after SIGKILL");
  for (const auto& issue : issues) {
    c.info("load issue " + issue.id + ": " + issue.message);
  }

  test::ServeProcess again(CHOREO_CLI_PATH, storeDir.string(), model.string(), 0);
  test::WireClient client("127.0.0.1", again.port);
  Session s(client, "after");
  int identical = 0;
  for (const auto& id : ids) {
    identical += s.record(id) == before[id];
  }
  c.expect(identical == static_cast<int>(ids.size()), "every acknowledged record reloads identically");
  c.expect(s.call("list_gallery", json::object()).at("payload") == galleryBefore, "gallery reloads in order");

  // Provenance closure: every parent resolves, every chain ends at a root.
  bool closed = true;
  std::function<void(const std::string&, int)> walk = [&](const std::string& id, int depth) {
    const json r = s.call("get_sequence", {{"id", id}});
    if (!Session::ok(r) || depth > 64) {
      closed = false;
      return;
    }
    const json& prov = r.at("payload").at("provenance");
    closed = closed && !prov.empty() &&
             (prov[0].at("kind") == "generate" || prov[0].at("kind") == "import");
    for (const auto& step : prov) {
      for (const auto& parent : step.at("parent_ids")) {
        walk(parent, depth + 1);
      }
    }
  };
  for (const auto& id : ids) {
    walk(id, 0);
  }
  c.expect(closed, "all provenance chains are intact after reload");

  const json more = s.call("edit", {{"base_id", ids[4]}, {"edit", {{"kind", "style"}, {"style", "proud"}}}});
  c.expect(Session::ok(more), "editing continues on a reloaded record");
  if (Session::ok(more)) {
    const json rec = s.record(more.at("payload").at("id"));
    c.expect(rec.at("provenance").size() == before[ids[4]].at("provenance").size() + 1, "new edit extends the reloaded chain");
  }
  again.process.kill(SIGTERM);
  c.note("records", ids.size());
#endif
}

} // namespace

Criterion protocolAndPersistence() {
  return {"protocol_persistence", 60, [](Checks& c) {
            goldenReplay(c);
            fifoOrdering(c);
            killAndReload(c);
          }};
}

} // namespace choreo::acceptance
