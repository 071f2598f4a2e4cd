#pragma once

#include "rentdiv/app.hpp"
#include "rentdiv/io.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>

namespace httplib {
class Server;
}

namespace rentdiv::service {

/// Applies one edit object ({"op": "add_apartment" | "remove_apartment" |
/// "set_value" | "set_rent", ...}) and returns the edited copy. Throws
/// io::ParseError or std::invalid_argument on a bad edit.
Instance apply_edit(const Instance& inst, const io::Json& edit);

/// Applies a list of edits in order; the result must pass validate().
Instance apply_edits(const Instance& inst, const io::Json& edits);

struct Response {
    int status = 200;
    io::Json body;
};

/**
 * In-memory sessions behind a small JSON API. Edits to a session are
 * serialized; solves work on a snapshot of the instance, so they never block
 * edits to other sessions and may run in parallel.
 */
class Service {
public:
    Response handle(const std::string& method, const std::string& path, const std::string& body);

    /// Mounts every route on an httplib server.
    void attach(httplib::Server& server);

    /// Sessions as {"sessions": [{id, version, instance, history}]}.
    io::Json snapshot() const;
    void restore(const io::Json& snapshot);

private:
    struct Session {
        mutable std::shared_mutex mutex;
        std::optional<Instance> instance;
        std::uint64_t version = 0;
        io::Json history = io::Json::array();
        std::optional<io::SolutionDocument> last_solve;
        std::optional<Instance> last_solve_instance;
    };

    std::shared_ptr<Session> find(const std::string& id) const;
    std::string new_id();

    Response create(const std::string& body);
    Response get(const std::string& id) const;
    Response remove(const std::string& id);
    Response put_instance(const std::string& id, const std::string& body);
    Response solve(const std::string& id, const std::string& body);
    Response whatif(const std::string& id, const std::string& body) const;
    Response ledger(const std::string& id) const;
    Response envy(const std::string& id) const;

    mutable std::mutex sessions_mutex_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    std::uint64_t counter_ = 0;
};

}  // namespace rentdiv::service
