#include "choreo/gallery/store.hpp"

#include "transcript.hpp"
#include "wire_client.hpp"

#include <doctest.h>

#include <map>

using namespace choreo;
using nlohmann::json;

namespace {

json req(const std::string& id, const std::string& op, json params = json::object()) {
  return {{"request_id", id}, {"op", op}, {"params", std::move(params)}};
}

// Collects responses by request id so interleaved answers can be awaited.
class Mailbox {
 public:
  explicit Mailbox(test::WireClient& client) : client_(client) {}

  json await(const std::string& id) {
    while (!box_.count(id)) {
      const json m = client_.receive();
      REQUIRE(m.is_object());
      arrival_.push_back(m.at("request_id").is_null() ? "" : m.at("request_id").get<std::string>());
      box_[arrival_.back()] = m;
    }
    return box_.at(id);
  }

  const std::vector<std::string>& arrival() const {
    return arrival_;
  }

 private:
  test::WireClient& client_;
  std::map<std::string, json> box_;
  std::vector<std::string> arrival_;
};

} // namespace

TEST_CASE("generate over the wire") {
  test::TestServer server;
  auto client = server.connect();
  const json r = client->call({{"request_id", "g"}, {"op", "generate"}, {"params", {{"prompt", "spin in place"}, {"duration_s", 1.0}}}, {"seed", 5}});
  CHECK(r.at("request_id") == "g");
  CHECK(r.at("status") == "ok");
  REQUIRE(r.at("payload").at("ids").size() == 3u);
  CHECK(r.at("payload").at("frames") == 20);
  CHECK(r.at("payload").at("ticket") == 0);
  for (const auto& id : r.at("payload").at("ids")) {
    CHECK(isSequenceId(id.get<std::string>()));
    CHECK(server.store().get(id).provenance.front().promptOrParams == "spin in place");
  }
  const json again = client->call({{"request_id", "g2"}, {"op", "generate"}, {"params", {{"prompt", "spin in place"}, {"duration_s", 1.0}}}, {"seed", 5}});
  CHECK(again.at("payload").at("ticket") == 1);
  CHECK(server.store().get(again.at("payload").at("ids")[0]).motion == server.store().get(r.at("payload").at("ids")[0]).motion);
}

TEST_CASE("errors keep the connection open") {
  test::TestServer server;
  auto client = server.connect();

  client->sendLine(R"({"request_id":"x","op":})");
  const json syntax = client->receive();
  CHECK(syntax.at("status") == "error");
  CHECK(syntax.at("request_id").is_null());
  CHECK(syntax.at("payload").at("code") == "bad_request");
  CHECK(syntax.at("payload").at("offset") == 23);

  const json unknown = client->call(req("u", "teleport"));
  CHECK(unknown.at("request_id") == "u");
  CHECK(unknown.at("payload").at("code") == "bad_request");

  const json missing = client->call(req("m", "get_sequence", {{"id", newSequenceId()}}));
  CHECK(missing.at("payload").at("code") == "not_found");
  CHECK(missing.at("payload").at("message").get<std::string>().find("sequence not found") != std::string::npos);

  const json badParams = client->call(req("p", "generate", {{"prompt", "spin"}, {"duration_s", 30}}));
  CHECK(badParams.at("payload").at("code") == "invalid_params");
  CHECK(badParams.at("payload").contains("ticket"));

  client->sendLine("");
  client->sendLine("   ");
  client->sendLine(req("crlf", "list_gallery").dump() + "\r");
  CHECK(client->receive().at("request_id") == "crlf");
  CHECK(client->call(req("ok", "list_gallery")).at("status") == "ok");
}

TEST_CASE("duplicate request ids are rejected per connection") {
  test::TestServer server;
  auto a = server.connect();
  auto b = server.connect();
  CHECK(a->call(req("same", "list_gallery")).at("status") == "ok");
  const json dup = a->call(req("same", "list_gallery"));
  CHECK(dup.at("status") == "error");
  CHECK(dup.at("payload").at("code") == "bad_request");
  CHECK(dup.at("payload").at("message") == "duplicate request_id");
  CHECK(b->call(req("same", "list_gallery")).at("status") == "ok");
}

TEST_CASE("an over-long line is refused without dropping the connection") {
  test::TestServer server;
  auto client = server.connect();
  std::string huge = R"({"request_id":"big","op":"list_gallery","params":{"pad":")";
  huge.append(kMaxLineBytes, 'a');
  huge += "\"}}";
  client->sendLine(huge);
  const json r = client->receive();
  CHECK(r.at("status") == "error");
  CHECK(r.at("payload").at("code") == "bad_request");
  CHECK(r.at("payload").at("offset") == kMaxLineBytes);
  CHECK(client->call(req("after", "list_gallery")).at("status") == "ok");
  CHECK_FALSE(client->hasBufferedLine());
}

TEST_CASE("light ops are answered while a generate is queued") {
  test::TestServer server;
  auto client = server.connect();
  Mailbox box(*client);
  client->send(req("slow", "generate", {{"prompt", "strutting side step"}, {"duration_s", 10.0}}));
  client->send(req("fast", "list_gallery"));
  box.await("slow");
  box.await("fast");
  CHECK(box.arrival() == std::vector<std::string>{"fast", "slow"});
}

TEST_CASE("queued ops run in FIFO order across connections") {
  test::TestServer server;
  auto a = server.connect();
  auto b = server.connect();
  Mailbox boxA(*a);
  Mailbox boxB(*b);
  std::vector<std::string> sent;
  // A list_gallery answer on the same connection proves the preceding
  // generate was enqueued, which fixes the global enqueue order.
  for (int i = 0; i < 10; ++i) {
    for (auto [client, box, tag] : {std::tuple{a.get(), &boxA, "a"}, std::tuple{b.get(), &boxB, "b"}}) {
      const std::string id = std::string(tag) + std::to_string(i);
      client->send(req(id, "generate", {{"prompt", "happy wave"}, {"duration_s", 0.5}}));
      client->send(req(id + "-barrier", "list_gallery"));
      box->await(id + "-barrier");
      sent.push_back(id);
    }
  }
  std::vector<std::string> putOrder;
  for (size_t k = 0; k < sent.size(); ++k) {
    Mailbox& box = sent[k][0] == 'a' ? boxA : boxB;
    const json r = box.await(sent[k]);
    CHECK(r.at("status") == "ok");
    CHECK(r.at("payload").at("ticket") == k);
    for (const auto& id : r.at("payload").at("ids")) {
      putOrder.push_back(id);
    }
  }
  CHECK(server.store().ids() == putOrder);
}

TEST_CASE("gallery and export over the wire") {
  test::TestServer server;
  auto client = server.connect();
  const json gen = client->call(req("g", "generate", {{"prompt", "proud arm wave"}, {"duration_s", 1.0}}));
  const std::string id = gen.at("payload").at("ids")[1];
  CHECK(client->call(req("add", "add_to_gallery", {{"id", id}})).at("payload").at("in_gallery") == true);
  const json list = client->call(req("list", "list_gallery"));
  REQUIRE(list.at("payload").at("items").size() == 1u);
  CHECK(list.at("payload").at("items")[0].at("id") == id);
  CHECK(std::filesystem::exists(server.storeDir() / list.at("payload").at("items")[0].at("thumbnail").get<std::string>()));

  const json got = client->call(req("get", "get_sequence", {{"id", id}}));
  CHECK(got.at("payload").at("in_gallery") == true);
  CHECK(got.at("payload").at("provenance").size() == 1u);

  const json gltf = client->call(req("x", "export", {{"id", id}, {"format", "gltf"}}));
  CHECK(gltf.at("status") == "ok");
  CHECK(json::parse(gltf.at("payload").at("content").get<std::string>()).at("asset").at("version") == "2.0");
}
