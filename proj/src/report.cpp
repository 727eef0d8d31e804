#include "riesz/report.hpp"

#include <charconv>

#include <json.hpp>

namespace riesz {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string to_json(const std::vector<Report>& reports) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
        nlohmann::ordered_json obj;
        obj["property"] = r.property;
        obj["trials"] = r.trials;
        obj["worst_slack"] = r.worst_slack;
        obj["pass"] = r.pass;
        if (r.n) {
            obj["n"] = *r.n;
        }
        if (r.m) {
            obj["m"] = *r.m;
        }
        if (!r.note.empty()) {
            obj["note"] = r.note;
        }
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

}  // namespace riesz
