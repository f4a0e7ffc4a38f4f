#include <gtest/gtest.h>

#include <json.hpp>

#include "bidding/service.hpp"

namespace bidding {
namespace {

using Json = nlohmann::json;

Json post(Service& s, const std::string& path, const Json& body, int want = 200) {
  HttpResponse r = s.handle("POST", path, body.dump());
  EXPECT_EQ(r.status, want) << path << " " << r.body;
  return Json::parse(r.body);
}

Json get(Service& s, const std::string& path, int want = 200) {
  HttpResponse r = s.handle("GET", path, "");
  EXPECT_EQ(r.status, want) << path << " " << r.body;
  return Json::parse(r.body);
}

void bid(Service& s, const std::string& id, const char* side, int amount) {
  post(s, "/sessions/" + id + "/bid", {{"player", side}, {"bid", amount}});
}
void tie(Service& s, const std::string& id, const char* side, const char* choice) {
  post(s, "/sessions/" + id + "/tie", {{"player", side}, {"choice", choice}});
}
void cell(Service& s, const std::string& id, const char* side, int c) {
  post(s, "/sessions/" + id + "/move", {{"player", side}, {"election", "self"}, {"cell", c}});
}

void intro_game(Service& s, const std::string& id) {
  bid(s, id, "alice", 1), bid(s, id, "bob", 1), tie(s, id, "alice", "self_win");
  cell(s, id, "alice", 4);
  bid(s, id, "alice", 1), bid(s, id, "bob", 1), tie(s, id, "bob", "self_win");
  cell(s, id, "bob", 0);
  bid(s, id, "alice", 2), bid(s, id, "bob", 2), tie(s, id, "alice", "opponent_wins");
  cell(s, id, "bob", 2);
  bid(s, id, "alice", 2), bid(s, id, "bob", 2), tie(s, id, "alice", "self_win");
  cell(s, id, "alice", 1);
  bid(s, id, "alice", 4), bid(s, id, "bob", 4), tie(s, id, "bob", "self_win");
  cell(s, id, "bob", 7);
  bid(s, id, "alice", 0), bid(s, id, "bob", 0), tie(s, id, "alice", "self_win");
  cell(s, id, "alice", 3);
  bid(s, id, "alice", 1), bid(s, id, "bob", 0);
  cell(s, id, "alice", 5);
}

TEST(Service, SolveEndpoints) {
  Service s;
  Json r = post(s, "/solve/richman", {{"game", "ttt"}});
  EXPECT_EQ(r["R"], "133/256");
  EXPECT_EQ(r["P"], "123/256");
  Json t = post(s, "/solve/threshold", {{"game", "E"}, {"k_min", 0}, {"k_max", 4}});
  ASSERT_EQ(t["values"].size(), 5u);
  EXPECT_EQ(t["values"][4]["f"], "2*");
  Json o = post(s, "/solve/oracle", {{"game", "tug:2"}, {"k", 2}});
  bool found = false;
  for (const auto& row : o["start"]) {
    if (row["alice"] == 1 && row["holder"] == "alice") {
      EXPECT_EQ(row["outcome"], "alice");
      found = true;
    }
  }
  EXPECT_TRUE(found);
  post(s, "/solve/threshold", {{"game", "tug:2"}, {"k", 2}}, 400);
  post(s, "/solve/threshold", {{"game", "nosuch"}, {"k", 2}}, 400);
  post(s, "/solve/threshold", {{"game", "E"}, {"k_min", 0}, {"k_max", 100000}}, 422);
}

TEST(Service, SessionLifecycle) {
  Service s;
  Json c = post(s, "/sessions", {{"game", "ttt"}, {"split", "4*/4"}}, 201);
  EXPECT_EQ(c["id"], "s1");
  EXPECT_EQ(c["state"]["phase"], "AwaitingBids");
  intro_game(s, "s1");
  Json g = get(s, "/sessions/s1");
  EXPECT_EQ(g["state"]["phase"], "Finished");
  EXPECT_EQ(g["state"]["outcome"], "AliceWin");
  EXPECT_EQ(g["state"]["alice"], "7");
  EXPECT_EQ(g["state"]["bob"], "1*");
  EXPECT_FALSE(g["events"].empty());
  EXPECT_EQ(post(s, "/sessions", {{"game", "E"}, {"split", "1/1*"}}, 201)["id"], "s2");
}

TEST(Service, ErrorStatuses) {
  Service s;
  get(s, "/sessions/s9", 404);
  get(s, "/nowhere", 404);
  post(s, "/sessions", {{"game", "ttt"}, {"split", "2*/2"}}, 201);
  post(s, "/sessions/s1/tie", {{"player", "alice"}, {"choice", "self_win"}}, 409);
  post(s, "/sessions/s1/bid", {{"player", "alice"}, {"bid", 9}}, 400);
  post(s, "/sessions/s1/bid", {{"player", "carol"}, {"bid", 1}}, 400);
  HttpResponse bad = s.handle("POST", "/sessions/s1/bid", "{not json");
  EXPECT_EQ(bad.status, 400);
  // A rejected action leaves the session as it was.
  EXPECT_EQ(get(s, "/sessions/s1")["events"].size(), 0u);
  post(s, "/sessions", {{"game", "ttt"}}, 400);

  ServiceOptions small;
  small.state_cap = 50;
  Service capped(small);
  Json err = post(capped, "/solve/oracle", {{"game", "tug:4"}, {"k", 12}}, 422);
  EXPECT_EQ(err["code"], "state_cap_exceeded");
}

TEST(Service, AiRepliesAfterHumanAction) {
  Service s;
  post(s, "/sessions", {{"game", "E"}, {"split", "2/1*"}, {"ai", "bob"}}, 201);
  Json r = post(s, "/sessions/s1/bid", {{"player", "alice"}, {"bid", 2}});
  EXPECT_NE(r["state"]["phase"], "AwaitingBids");
}

TEST(Service, SnapshotRoundTrip) {
  Service s;
  post(s, "/sessions", {{"game", "ttt"}, {"split", "4*/4"}}, 201);
  post(s, "/sessions", {{"game", "E"}, {"split", "2*/2"}}, 201);
  bid(s, "s1", "alice", 1), bid(s, "s1", "bob", 1);
  bid(s, "s2", "bob", 1);  // pending, hidden bid
  Json snap = post(s, "/admin/snapshot", Json::object());
  Service t;
  t.load_snapshot(snap["snapshot"].dump());
  EXPECT_EQ(t.store().snapshot(), s.store().snapshot());
  EXPECT_EQ(get(t, "/sessions/s1").dump(), get(s, "/sessions/s1").dump());
  EXPECT_EQ(post(t, "/sessions", {{"game", "E"}, {"split", "1/1*"}}, 201)["id"], "s3");
  EXPECT_THROW(t.load_snapshot("{}"), Error);
}

TEST(Service, ReplayIsIdempotent) {
  Service a, b;
  post(a, "/sessions", {{"game", "ttt"}, {"split", "4*/4"}}, 201);
  post(b, "/sessions", {{"game", "ttt"}, {"split", "4*/4"}}, 201);
  intro_game(a, "s1");
  intro_game(b, "s1");
  EXPECT_EQ(get(a, "/sessions/s1").dump(), get(b, "/sessions/s1").dump());
}

}  // namespace
}  // namespace bidding
