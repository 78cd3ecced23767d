#pragma once

#include <string>
#include <vector>

namespace seventerm {

// Outcome of one named check. A fail carries a concrete witness; a skip
// carries the reason it could not run.
struct Verdict {
    enum class Status { pass, fail, skipped };
    Status status = Status::pass;
    std::string name;
    std::string detail;

    static Verdict passed(std::string name, std::string detail = "") {
        return {Status::pass, std::move(name), std::move(detail)};
    }
    static Verdict failed(std::string name, std::string detail) {
        return {Status::fail, std::move(name), std::move(detail)};
    }
    static Verdict skip(std::string name, std::string reason) {
        return {Status::skipped, std::move(name), std::move(reason)};
    }

    bool ok() const { return status != Status::fail; }
    const char* status_str() const {
        switch (status) {
            case Status::pass: return "pass";
            case Status::fail: return "fail";
            default: return "skipped";
        }
    }
};

inline bool all_ok(const std::vector<Verdict>& vs) {
    for (const auto& v : vs)
        if (!v.ok()) return false;
    return true;
}

} // namespace seventerm
