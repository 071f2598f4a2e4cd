#include "rentdiv/service.hpp"

#include <httplib.h>

#include <random>
#include <regex>
#include <sstream>

namespace rentdiv::service {

namespace {

// Maps to an HTTP status at the routing layer.
struct HttpError : std::runtime_error {
    int status;
    HttpError(int s, const std::string& message) : std::runtime_error(message), status(s) {}
};

io::Json error_body(const std::string& message) { return {{"error", message}}; }

io::Json parse_body(const std::string& body) {
    if (body.empty()) return io::Json::object();
    try {
        return io::parse_json(body);
    } catch (const io::ParseError& e) {
        throw HttpError(400, e.what());
    }
}

std::string text_field(const io::Json& j, const std::string& key, const std::string& fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_string()) throw io::ParseError(key, "expected a string");
    return j[key].get<std::string>();
}

std::size_t index_field(const io::Json& j, const std::string& key, std::size_t bound) {
    if (!j.contains(key) || !j[key].is_number_integer()) throw io::ParseError(key, "expected an integer index");
    const auto v = j[key].get<long long>();
    if (v < 0 || static_cast<std::size_t>(v) >= bound)
        throw io::ParseError(key, "index " + std::to_string(v) + " out of range (size " + std::to_string(bound) + ")");
    return static_cast<std::size_t>(v);
}

Instance rebuild(const Instance& inst, ValueTensor values, std::vector<Money> rents) {
    Instance out(std::move(values), std::move(rents), inst.normalized());
    out.player_names = inst.player_names;
    out.apartment_names = inst.apartment_names;
    out.room_names = inst.room_names;
    return out;
}

void require_valid(const Instance& inst) {
    const auto report = validate(inst);
    if (!report.ok()) throw std::invalid_argument(report.violations.front().message);
}

struct SolveRequest {
    app::Notion notion;
    app::ObjectiveKind objective;
};

SolveRequest solve_request(const io::Json& j) {
    try {
        return {app::parse_notion(text_field(j, "notion", "nef")),
                app::parse_objective(text_field(j, "objective", "none"))};
    } catch (const std::invalid_argument& e) {
        throw HttpError(422, e.what());
    }
}

// Edits arrive as a list under "edits", a single object under "edit", or a
// bare edit object.
io::Json edits_of(const io::Json& j) {
    if (j.contains("edits")) return j["edits"];
    if (j.contains("edit")) return io::Json::array({j["edit"]});
    if (j.contains("op")) return io::Json::array({j});
    return io::Json::array();
}

}  // namespace

Instance apply_edit(const Instance& inst, const io::Json& edit) {
    if (!edit.is_object()) throw io::ParseError("edit", "expected an object");
    const std::string op = text_field(edit, "op", "");
    const std::size_t n = inst.players(), m = inst.apartments();
    if (op == "add_apartment") {
        if (!edit.contains("values")) throw io::ParseError("values", "missing field");
        const auto& rows = edit["values"];
        if (!rows.is_array() || rows.size() != n) throw io::ParseError("values", "expected one row per player");
        std::vector<std::vector<Money>> extra;
        for (std::size_t i = 0; i < n; ++i) {
            if (!rows[i].is_array() || rows[i].size() != n)
                throw io::ParseError("values[" + std::to_string(i) + "]", "expected one value per room");
            extra.emplace_back();
            for (std::size_t k = 0; k < n; ++k)
                extra.back().push_back(
                    io::money_from_json(rows[i][k], "values[" + std::to_string(i) + "][" + std::to_string(k) + "]"));
        }
        if (!edit.contains("rent")) throw io::ParseError("rent", "missing field");
        Instance out = inst.with_apartment(extra, io::money_from_json(edit["rent"], "rent"), text_field(edit, "name", ""));
        if (edit.contains("rooms")) {
            const auto& rooms = edit["rooms"];
            if (!rooms.is_array() || rooms.size() != n) throw io::ParseError("rooms", "expected one name per room");
            for (std::size_t k = 0; k < n; ++k) {
                if (!rooms[k].is_string()) throw io::ParseError("rooms", "expected strings");
                out.room_names.back()[k] = rooms[k].get<std::string>();
            }
        }
        return out;
    }
    if (op == "remove_apartment") {
        const std::size_t j = index_field(edit, "apartment", m);
        if (m == 1) throw std::invalid_argument("cannot remove the only apartment");
        std::vector<std::size_t> keep;
        for (std::size_t a = 0; a < m; ++a)
            if (a != j) keep.push_back(a);
        return inst.select_apartments(keep);
    }
    if (op == "set_value") {
        const std::size_t i = index_field(edit, "player", n), j = index_field(edit, "apartment", m),
                          k = index_field(edit, "room", n);
        if (!edit.contains("value")) throw io::ParseError("value", "missing field");
        ValueTensor v = inst.values();
        v[i][j][k] = io::money_from_json(edit["value"], "value");
        return rebuild(inst, std::move(v), inst.rents());
    }
    if (op == "set_rent") {
        const std::size_t j = index_field(edit, "apartment", m);
        if (!edit.contains("rent")) throw io::ParseError("rent", "missing field");
        auto rents = inst.rents();
        rents[j] = io::money_from_json(edit["rent"], "rent");
        return rebuild(inst, inst.values(), std::move(rents));
    }
    if (op == "set_normalized") {
        if (!edit.contains("normalized") || !edit["normalized"].is_boolean())
            throw io::ParseError("normalized", "expected a boolean");
        return inst.with_normalized(edit["normalized"].get<bool>());
    }
    throw io::ParseError("op", "unknown edit '" + op + "'");
}

Instance apply_edits(const Instance& inst, const io::Json& edits) {
    if (!edits.is_array()) throw io::ParseError("edits", "expected an array");
    Instance out = inst;
    for (const auto& e : edits) out = apply_edit(out, e);
    require_valid(out);
    return out;
}

std::shared_ptr<Service::Session> Service::find(const std::string& id) const {
    std::lock_guard lock(sessions_mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) throw HttpError(404, "unknown session '" + id + "'");
    return it->second;
}

std::string Service::new_id() {
    static thread_local std::mt19937_64 rng{std::random_device{}()};
    std::ostringstream out;
    out << std::hex << rng() << '-' << ++counter_;
    return out.str();
}

Response Service::create(const std::string& body) {
    const io::Json j = parse_body(body);
    auto session = std::make_shared<Session>();
    if (j.contains("instance") || j.contains("players")) {
        Instance inst = io::instance_from_json(j.contains("instance") ? j["instance"] : j);
        require_valid(inst);
        session->instance = std::move(inst);
        session->version = 1;
    }
    std::string id;
    {
        std::lock_guard lock(sessions_mutex_);
        id = new_id();
        sessions_[id] = session;
    }
    return {201, {{"id", id}, {"version", session->version}}};
}

Response Service::get(const std::string& id) const {
    auto s = find(id);
    std::shared_lock lock(s->mutex);
    io::Json out{{"id", id}, {"version", s->version}};
    out["instance"] = s->instance ? io::instance_to_json(*s->instance) : io::Json(nullptr);
    out["history"] = s->history;
    return {200, out};
}

Response Service::remove(const std::string& id) {
    std::lock_guard lock(sessions_mutex_);
    if (!sessions_.erase(id)) throw HttpError(404, "unknown session '" + id + "'");
    return {200, {{"deleted", id}}};
}

Response Service::put_instance(const std::string& id, const std::string& body) {
    auto s = find(id);
    const io::Json j = parse_body(body);
    std::unique_lock lock(s->mutex);
    if (j.contains("base_version")) {
        if (!j["base_version"].is_number_integer()) throw io::ParseError("base_version", "expected an integer");
        if (j["base_version"].get<std::uint64_t>() != s->version)
            throw HttpError(409, "session is at version " + std::to_string(s->version) + ", edit was based on " +
                                     j["base_version"].dump());
    }
    Instance next = [&] {
        if (j.contains("instance") || j.contains("players")) {
            Instance inst = io::instance_from_json(j.contains("instance") ? j["instance"] : j);
            require_valid(inst);
            return inst;
        }
        if (!s->instance) throw HttpError(409, "session has no instance to edit yet");
        const io::Json edits = edits_of(j);
        if (edits.empty()) throw io::ParseError("edits", "no instance or edits in request");
        return apply_edits(*s->instance, edits);
    }();
    s->instance = std::move(next);
    ++s->version;
    s->history.push_back({{"version", s->version}, {"edit", j}});
    return {200, {{"id", id}, {"version", s->version}, {"instance", io::instance_to_json(*s->instance)}}};
}

Response Service::solve(const std::string& id, const std::string& body) {
    auto s = find(id);
    const auto req = solve_request(parse_body(body));
    Instance inst = [&] {
        std::shared_lock lock(s->mutex);
        if (!s->instance) throw HttpError(409, "session has no instance yet");
        return *s->instance;
    }();
    auto doc = app::solve(inst, req.notion, req.objective);
    io::Json out = io::solution_to_json(inst, doc);
    std::unique_lock lock(s->mutex);
    s->history.push_back({{"version", s->version},
                          {"solve", {{"notion", doc.notion}, {"objective", doc.objective}}},
                          {"status", out["status"]},
                          {"objective_value", out.contains("objective_value") ? out["objective_value"] : nullptr}});
    s->last_solve = std::move(doc);
    s->last_solve_instance = std::move(inst);
    return {200, out};
}

Response Service::whatif(const std::string& id, const std::string& body) const {
    auto s = find(id);
    const io::Json j = parse_body(body);
    const auto req = solve_request(j);
    Instance edited = [&] {
        std::shared_lock lock(s->mutex);
        if (!s->instance) throw HttpError(409, "session has no instance yet");
        return apply_edits(*s->instance, edits_of(j));
    }();
    return {200, io::solution_to_json(edited, app::solve(edited, req.notion, req.objective))};
}

Response Service::ledger(const std::string& id) const {
    auto s = find(id);
    std::shared_lock lock(s->mutex);
    if (!s->last_solve || !s->last_solve->ledger)
        throw HttpError(404, "no negotiated solve in this session yet");
    return {200, io::ledger_to_json(*s->last_solve->ledger)};
}

Response Service::envy(const std::string& id) const {
    auto s = find(id);
    std::shared_lock lock(s->mutex);
    if (!s->last_solve || !s->last_solve->solved()) throw HttpError(404, "no solved solution in this session yet");
    const auto e = envy_matrix(*s->last_solve_instance, *s->last_solve->solution);
    io::Json rows = io::Json::array();
    for (const auto& a : e) {
        io::Json r1 = io::Json::array();
        for (const auto& b : a) {
            io::Json r2 = io::Json::array();
            for (const auto& x : b) r2.push_back(io::money_to_json(x));
            r1.push_back(std::move(r2));
        }
        rows.push_back(std::move(r1));
    }
    return {200, {{"chosen", s->last_solve->solution->chosen}, {"envy", std::move(rows)}}};
}

Response Service::handle(const std::string& method, const std::string& path, const std::string& body) {
    static const std::regex session_re(R"(^/sessions/([^/]+)(/[a-z]+)?$)");
    try {
        if (path == "/sessions") {
            if (method == "POST") return create(body);
            throw HttpError(405, "method not allowed");
        }
        std::smatch match;
        if (!std::regex_match(path, match, session_re)) throw HttpError(404, "no such endpoint");
        const std::string id = match[1], tail = match[2];
        if (tail.empty() && method == "GET") return get(id);
        if (tail.empty() && method == "DELETE") return remove(id);
        if (tail == "/instance" && method == "PUT") return put_instance(id, body);
        if (tail == "/solve" && method == "POST") return solve(id, body);
        if (tail == "/whatif" && method == "POST") return whatif(id, body);
        if (tail == "/ledger" && method == "GET") return ledger(id);
        if (tail == "/envy" && method == "GET") return envy(id);
        find(id);
        throw HttpError(tail.empty() || tail == "/instance" || tail == "/solve" || tail == "/whatif" ||
                                tail == "/ledger" || tail == "/envy"
                            ? 405
                            : 404,
                        "no such endpoint");
    } catch (const HttpError& e) {
        return {e.status, error_body(e.what())};
    } catch (const io::ParseError& e) {
        return {422, {{"error", e.what()}, {"field", e.field()}}};
    } catch (const std::invalid_argument& e) {
        return {422, error_body(e.what())};
    } catch (const std::out_of_range& e) {
        return {422, error_body(e.what())};
    } catch (const std::exception& e) {
        return {500, error_body(e.what())};
    }
}

void Service::attach(httplib::Server& server) {
    auto route = [this](const httplib::Request& req, httplib::Response& res) {
        const Response r = handle(req.method, req.path, req.body);
        res.status = r.status;
        res.set_content(r.body.dump(), "application/json");
    };
    const std::string any = R"(/sessions(/.*)?)";
    server.Get(any, route);
    server.Post(any, route);
    server.Put(any, route);
    server.Delete(any, route);
}

io::Json Service::snapshot() const {
    io::Json list = io::Json::array();
    std::lock_guard lock(sessions_mutex_);
    for (const auto& [id, s] : sessions_) {
        std::shared_lock slock(s->mutex);
        list.push_back({{"id", id},
                        {"version", s->version},
                        {"instance", s->instance ? io::instance_to_json(*s->instance) : io::Json(nullptr)},
                        {"history", s->history}});
    }
    return {{"sessions", std::move(list)}};
}

void Service::restore(const io::Json& snapshot) {
    if (!snapshot.contains("sessions") || !snapshot["sessions"].is_array())
        throw io::ParseError("sessions", "expected an array");
    std::map<std::string, std::shared_ptr<Session>> loaded;
    for (const auto& entry : snapshot["sessions"]) {
        auto s = std::make_shared<Session>();
        if (!entry.contains("id") || !entry["id"].is_string()) throw io::ParseError("sessions[].id", "expected a string");
        if (entry.contains("instance") && !entry["instance"].is_null())
            s->instance = io::instance_from_json(entry["instance"]);
        if (entry.contains("version")) s->version = entry["version"].get<std::uint64_t>();
        if (entry.contains("history")) s->history = entry["history"];
        loaded[entry["id"].get<std::string>()] = s;
    }
    std::lock_guard lock(sessions_mutex_);
    for (auto& [id, s] : loaded) sessions_[id] = std::move(s);
}

}  // namespace rentdiv::service
