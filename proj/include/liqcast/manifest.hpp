#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "liqcast/io_util.hpp"
#include "liqcast/time_util.hpp"

namespace liqcast {

/// Provenance record for one command invocation. Written with status
/// "running" before any work and rewritten with the final status afterwards,
/// so an output directory always tells whether its contents are complete.
/// Timestamps live here and only here; the data artifacts stay byte-stable
/// across reruns.
struct RunManifest {
    std::string command;
    std::string tool_version;
    std::string config_hash;
    std::string input_path;
    std::string input_hash;
    std::string started_at;
    std::string finished_at;
    std::string status = "running"; // running | ok | error
    std::string error;
    std::vector<std::string> outputs;

    static std::string now() {
        return format_timestamp(std::chrono::duration_cast<std::chrono::seconds>(
                                    std::chrono::system_clock::now().time_since_epoch())
                                    .count());
    }

    nlohmann::ordered_json to_json() const {
        return {{"command", command},
                {"tool_version", tool_version},
                {"config_hash", config_hash},
                {"input_path", input_path},
                {"input_hash", input_hash},
                {"started_at", started_at},
                {"finished_at", finished_at},
                {"status", status},
                {"error", error},
                {"outputs", outputs}};
    }

    void write(const std::filesystem::path& dir) const {
        atomic_write(dir / "manifest.json", to_json().dump(2) + "\n");
    }
};

} // namespace liqcast
