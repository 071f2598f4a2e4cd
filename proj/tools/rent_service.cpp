#include "rentdiv/service.hpp"

#include <CLI11.hpp>
#include <httplib.h>

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

httplib::Server* g_server = nullptr;

void on_signal(int) {
    if (g_server) g_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App cli{"HTTP/JSON rent division service"};
    int port = 8080;
    if (const char* env = std::getenv("RENT_SERVICE_PORT")) port = std::atoi(env);
    std::string host = "127.0.0.1", snapshot_path;
    cli.add_option("--port", port, "Listen port (default: RENT_SERVICE_PORT or 8080)");
    cli.add_option("--host", host, "Listen address");
    cli.add_option("--snapshot-path", snapshot_path, "Load sessions from here at start, save on shutdown");
    CLI11_PARSE(cli, argc, argv);

    rentdiv::service::Service service;
    if (!snapshot_path.empty()) {
        std::ifstream in(snapshot_path);
        if (in) {
            std::stringstream ss;
            ss << in.rdbuf();
            try {
                service.restore(rentdiv::io::parse_json(ss.str()));
            } catch (const std::exception& e) {
                std::cerr << "ignoring unreadable snapshot " << snapshot_path << ": " << e.what() << '\n';
            }
        }
    }

    httplib::Server server;
    service.attach(server);
    g_server = &server;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    std::cerr << "listening on " << host << ':' << port << '\n';
    if (!server.listen(host, port)) {
        std::cerr << "cannot listen on " << host << ':' << port << '\n';
        return 1;
    }
    if (!snapshot_path.empty()) {
        std::ofstream out(snapshot_path);
        out << service.snapshot().dump(2) << '\n';
        std::cerr << "snapshot written to " << snapshot_path << '\n';
    }
    return 0;
}
