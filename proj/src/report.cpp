#include "berge/report.hpp"

#include <algorithm>

#include "berge/errors.hpp"
#include "berge/extreal.hpp"

namespace berge {

const char* to_string(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Warn: return "warn";
        case Status::Fail: return "fail";
    }
    return "?";
}

Status worst(Status a, Status b) { return static_cast<int>(a) >= static_cast<int>(b) ? a : b; }

void CheckReport::add_witness(Witness w) { witnesses.push_back(std::move(w)); }

void CheckReport::finalize() {
    std::sort(witnesses.begin(), witnesses.end(),
              [](const Witness& a, const Witness& b) { return a.sort_key() < b.sort_key(); });
    set_counter("witnesses_total", witnesses.size());
    if (witnesses.size() > witness_cap) witnesses.resize(witness_cap);
    if (status == Status::Fail && witnesses.empty())
        throw Error("check \"" + name + "\": fail status requires a witness");
    if (status == Status::Pass && !witnesses.empty())
        throw Error("check \"" + name + "\": pass status forbids witnesses");
}

std::size_t CheckReport::counter(const std::string& key) const {
    for (const auto& [k, v] : counters)
        if (k == key) return v;
    return 0;
}

void CheckReport::bump(const std::string& key, std::size_t by) {
    for (auto& [k, v] : counters) {
        if (k == key) {
            v += by;
            return;
        }
    }
    counters.emplace_back(key, by);
}

void CheckReport::set_counter(const std::string& key, std::size_t value) {
    for (auto& [k, v] : counters) {
        if (k == key) {
            v = value;
            return;
        }
    }
    counters.emplace_back(key, value);
}

Json ext_to_json(double v) {
    if (v == ext::pos_inf) return "inf";
    if (v == ext::neg_inf) return "-inf";
    return v;
}

double ext_from_json(const Json& j) {
    if (j.is_string()) {
        if (j == "inf") return ext::pos_inf;
        if (j == "-inf") return ext::neg_inf;
        throw Error("not an extended real: " + j.dump());
    }
    return j.get<double>();
}

Json to_json(const Witness& w) {
    Json points = Json::object();
    for (const auto& [label, coords] : w.points) {
        Json arr = Json::array();
        for (double c : coords) arr.push_back(ext_to_json(c));
        points[label] = std::move(arr);
    }
    Json values = Json::object();
    for (const auto& [label, v] : w.values) values[label] = ext_to_json(v);
    return Json{{"points", std::move(points)}, {"values", std::move(values)}, {"reason", w.reason}};
}

Json to_json(const CheckReport& r) {
    Json witnesses = Json::array();
    for (const Witness& w : r.witnesses) witnesses.push_back(to_json(w));
    Json counters = Json::object();
    for (const auto& [k, v] : r.counters) counters[k] = v;
    return Json{{"check", r.name},
                {"status", to_string(r.status)},
                {"tolerances", r.tolerances},
                {"witnesses", std::move(witnesses)},
                {"counters", std::move(counters)}};
}

}  // namespace berge
