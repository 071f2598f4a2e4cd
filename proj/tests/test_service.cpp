#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rentdiv/fixtures.hpp"
#include "rentdiv/service.hpp"

#include <httplib.h>

#include <thread>

using namespace rentdiv;
using io::Json;
using service::Service;

namespace {

std::string create(Service& svc, const Instance& inst) {
    auto r = svc.handle("POST", "/sessions", Json{{"instance", io::instance_to_json(inst)}}.dump());
    REQUIRE(r.status == 201);
    return r.body["id"].get<std::string>();
}

Json solve(Service& svc, const std::string& id, const std::string& notion, const std::string& objective) {
    auto r = svc.handle("POST", "/sessions/" + id + "/solve", Json{{"notion", notion}, {"objective", objective}}.dump());
    REQUIRE(r.status == 200);
    return r.body;
}

Json alternative_edit() {
    Json rows = Json::array();
    for (const auto& row : fixtures::monotonicity_alternative_apartment()) {
        Json r = Json::array();
        for (const auto& x : row) r.push_back(io::money_to_json(x));
        rows.push_back(r);
    }
    return {{"op", "add_apartment"}, {"rent", "300"}, {"values", rows}};
}

Json second_mono_apartment() {
    const auto mono = fixtures::monotonicity_example();
    Json rows = Json::array();
    for (std::size_t i = 0; i < 3; ++i) {
        Json r = Json::array();
        for (const auto& x : mono.values()[i][1]) r.push_back(io::money_to_json(x));
        rows.push_back(r);
    }
    return {{"op", "add_apartment"}, {"rent", "300"}, {"values", rows}, {"name", "listing"}};
}

}  // namespace

TEST_CASE("solve nef maximin on the two-apartment example") {
    Service svc;
    const auto id = create(svc, fixtures::example_two_apartments());
    auto doc = solve(svc, id, "nef", "maximin");
    CHECK(doc["status"] == "solved");
    CHECK(doc["utilities"] == Json::array({"0", "0"}));
    CHECK(doc["objective_value"] == "0");

    auto ledger = svc.handle("GET", "/sessions/" + id + "/ledger", "");
    CHECK(ledger.status == 200);
    CHECK(ledger.body.contains("steps"));
    auto envy = svc.handle("GET", "/sessions/" + id + "/envy", "");
    CHECK(envy.status == 200);
    CHECK(envy.body["envy"].size() == 2);
}

TEST_CASE("uef with no solution is a normal response") {
    Service svc;
    const auto id = create(svc, fixtures::example_two_apartments());
    auto doc = solve(svc, id, "uef", "none");
    CHECK(doc["status"] == "none exists");
    CHECK(svc.handle("GET", "/sessions/" + id + "/envy", "").status == 404);
}

TEST_CASE("whatif is side-effect free") {
    Service svc;
    const auto id = create(svc, fixtures::monotonicity_first_apartment());
    const auto before = solve(svc, id, "nef", "maximin");
    CHECK(before["objective_value"] == "50");
    const auto version = svc.handle("GET", "/sessions/" + id, "").body["version"];

    const Json req{{"edit", second_mono_apartment()}, {"notion", "nef"}, {"objective", "maximin"}};
    auto w1 = svc.handle("POST", "/sessions/" + id + "/whatif", req.dump());
    auto w2 = svc.handle("POST", "/sessions/" + id + "/whatif", req.dump());
    REQUIRE(w1.status == 200);
    CHECK(w1.body == w2.body);
    CHECK(parse_money(w1.body["objective_value"].get<std::string>()) < 50);
    CHECK(w1.body["apartments"].size() == 2);

    auto after = solve(svc, id, "nef", "maximin");
    CHECK(after == before);
    CHECK(svc.handle("GET", "/sessions/" + id, "").body["version"] == version);

    auto up = svc.handle("POST", "/sessions/" + id + "/whatif",
                         Json{{"edit", alternative_edit()}, {"notion", "nef"}, {"objective", "maximin"}}.dump());
    CHECK(up.body["objective_value"] == "200");

    // Committing the edit changes the session.
    auto put = svc.handle("PUT", "/sessions/" + id + "/instance", Json{{"edits", {second_mono_apartment()}}}.dump());
    REQUIRE(put.status == 200);
    CHECK(solve(svc, id, "nef", "maximin")["objective_value"] == w1.body["objective_value"]);
}

TEST_CASE("edits") {
    Service svc;
    const auto id = create(svc, fixtures::example_two_apartments());
    const std::string path = "/sessions/" + id + "/instance";

    auto r = svc.handle("PUT", path, Json{{"op", "set_rent"}, {"apartment", 1}, {"rent", "250"}}.dump());
    REQUIRE(r.status == 200);
    CHECK(r.body["instance"]["apartments"][1]["rent"] == "250");
    r = svc.handle("PUT", path, Json{{"op", "set_value"}, {"player", 0}, {"apartment", 1}, {"room", 0}, {"value", "7.5"}}.dump());
    REQUIRE(r.status == 200);
    CHECK(r.body["instance"]["values"][0][1][0] == "7.5");
    r = svc.handle("PUT", path, Json{{"op", "remove_apartment"}, {"apartment", 0}}.dump());
    REQUIRE(r.status == 200);
    CHECK(r.body["instance"]["apartments"].size() == 1);
    CHECK(svc.handle("PUT", path, Json{{"op", "remove_apartment"}, {"apartment", 0}}.dump()).status == 422);

    // Invalid edits are rejected atomically.
    const auto version = svc.handle("GET", "/sessions/" + id, "").body["version"];
    const Json bad{{"edits",
                    {{{"op", "set_rent"}, {"apartment", 0}, {"rent", "1"}},
                     {{"op", "set_value"}, {"player", 0}, {"apartment", 0}, {"room", 0}, {"value", "-3"}}}}};
    CHECK(svc.handle("PUT", path, bad.dump()).status == 422);
    CHECK(svc.handle("PUT", path, Json{{"op", "add_apartment"}, {"rent", "1"}, {"values", {{"1"}}}}.dump()).status ==
          422);
    CHECK(svc.handle("PUT", path, Json{{"op", "set_rent"}, {"apartment", 5}, {"rent", "1"}}.dump()).status == 422);
    CHECK(svc.handle("PUT", path, Json{{"op", "explode"}}.dump()).status == 422);
    auto now = svc.handle("GET", "/sessions/" + id, "").body;
    CHECK(now["version"] == version);
    CHECK(now["instance"]["apartments"][0]["rent"] == "250");

    // Stale base version.
    auto stale = svc.handle("PUT", path, Json{{"base_version", 1}, {"op", "set_rent"}, {"apartment", 0}, {"rent", "9"}}.dump());
    CHECK(stale.status == 409);
    auto fresh = svc.handle("PUT", path,
                            Json{{"base_version", version}, {"op", "set_rent"}, {"apartment", 0}, {"rent", "9"}}.dump());
    CHECK(fresh.status == 200);

    // Full replacement.
    auto full = svc.handle("PUT", path, io::instance_to_json(fixtures::strong_negotiation_example()).dump());
    CHECK(full.status == 200);
    CHECK(full.body["instance"]["apartments"][0]["rent"] == "100");
    // Normalization is enforced for flagged instances.
    auto mono = create(svc, fixtures::monotonicity_example());
    CHECK(svc.handle("PUT", "/sessions/" + mono + "/instance",
                     Json{{"op", "set_rent"}, {"apartment", 0}, {"rent", "1"}}.dump())
              .status == 422);
}

TEST_CASE("errors") {
    Service svc;
    CHECK(svc.handle("POST", "/sessions/nope/solve", "{}").status == 404);
    CHECK(svc.handle("GET", "/sessions/nope/ledger", "").status == 404);
    CHECK(svc.handle("GET", "/elsewhere", "").status == 404);
    auto empty = svc.handle("POST", "/sessions", "");
    REQUIRE(empty.status == 201);
    const std::string id = empty.body["id"];
    CHECK(svc.handle("POST", "/sessions/" + id + "/solve", "{}").status == 409);
    CHECK(svc.handle("PUT", "/sessions/" + id + "/instance", "{not json").status == 400);
    auto bad_instance = svc.handle("PUT", "/sessions/" + id + "/instance",
                                   R"({"players":["a"],"apartments":[{"rent":"x"}],"values":[[["1"]]]})");
    CHECK(bad_instance.status == 422);
    CHECK(bad_instance.body["field"] == "apartments[0].rent");
    CHECK(svc.handle("PUT", "/sessions/" + id + "/instance", io::instance_to_json(fixtures::example_two_apartments()).dump())
              .status == 200);
    CHECK(svc.handle("POST", "/sessions/" + id + "/solve", R"({"notion":"fair"})").status == 422);
    CHECK(svc.handle("GET", "/sessions/" + id + "/ledger", "").status == 404);
    CHECK(svc.handle("GET", "/sessions/" + id + "/solve", "").status == 405);
    CHECK(svc.handle("DELETE", "/sessions/" + id, "").status == 200);
    CHECK(svc.handle("GET", "/sessions/" + id, "").status == 404);
}

TEST_CASE("every solve response passes its checker") {
    Service svc;
    for (const auto& inst : {fixtures::example_two_apartments(), fixtures::strong_negotiation_example(),
                             fixtures::monotonicity_example()}) {
        const auto id = create(svc, inst);
        for (std::string notion : {"uef", "nef", "strong-nef", "def"})
            for (std::string objective : {"none", "maximin", "equitability"}) {
                const auto doc = solve(svc, id, notion, objective);
                if (doc["status"] != "solved") continue;
                const auto parsed = io::solution_from_json(doc, inst);
                CHECK(app::check(inst, parsed, app::parse_notion(notion)).verdict == Certainty::Holds);
            }
    }
}

TEST_CASE("snapshot and restore") {
    Service svc;
    const auto id = create(svc, fixtures::strong_negotiation_example());
    solve(svc, id, "strong-nef", "none");
    const auto snap = svc.snapshot();
    Service other;
    other.restore(snap);
    auto got = other.handle("GET", "/sessions/" + id, "");
    REQUIRE(got.status == 200);
    CHECK(got.body["instance"] == io::instance_to_json(fixtures::strong_negotiation_example()));
    CHECK(got.body["history"].size() == 1);
    CHECK(solve(other, id, "strong-nef", "none") == solve(svc, id, "strong-nef", "none"));
}

TEST_CASE("concurrent sessions") {
    Service svc;
    std::vector<std::string> ids;
    for (int t = 0; t < 4; ++t) ids.push_back(create(svc, fixtures::monotonicity_example()));
    std::vector<Json> results(ids.size());
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < ids.size(); ++t)
        pool.emplace_back([&, t] {
            results[t] = svc.handle("POST", "/sessions/" + ids[t] + "/solve",
                                    Json{{"notion", "nef"}, {"objective", "maximin"}}.dump())
                             .body;
        });
    for (auto& th : pool) th.join();
    for (const auto& r : results) CHECK(r["objective_value"] == results[0]["objective_value"]);
}

TEST_CASE("over http") {
    Service svc;
    httplib::Server server;
    svc.attach(server);
    const int port = server.bind_to_any_port("127.0.0.1");
    std::thread th([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    httplib::Client client("127.0.0.1", port);
    auto created = client.Post("/sessions", Json{{"instance", io::instance_to_json(fixtures::example_two_apartments())}}.dump(),
                               "application/json");
    REQUIRE(created);
    CHECK(created->status == 201);
    const std::string id = Json::parse(created->body)["id"];
    auto solved = client.Post("/sessions/" + id + "/solve", R"({"notion":"nef","objective":"maximin"})", "application/json");
    REQUIRE(solved);
    CHECK(solved->status == 200);
    CHECK(Json::parse(solved->body)["utilities"] == Json::array({"0", "0"}));
    auto missing = client.Get("/sessions/unknown/envy");
    REQUIRE(missing);
    CHECK(missing->status == 404);

    server.stop();
    th.join();
}
