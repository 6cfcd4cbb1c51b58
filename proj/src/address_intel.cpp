#include "netdec/address_intel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include <httplib.h>
#include <json.hpp>

#include "netdec/csv.hpp"

namespace netdec {

std::string_view kind_name(AddressKind kind) {
    switch (kind) {
        case AddressKind::contract:
            return "CA";
        case AddressKind::eoa:
            return "EOA";
        case AddressKind::unknown:
            return "unknown";
    }
    return "unknown";
}

std::optional<AddressKind> parse_kind(std::string_view text) {
    if (text == "CA") {
        return AddressKind::contract;
    }
    if (text == "EOA") {
        return AddressKind::eoa;
    }
    if (text == "unknown") {
        return AddressKind::unknown;
    }
    return std::nullopt;
}

LabelStore LabelStore::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open label store: " + path.string());
    }
    LabelStore store;
    CsvReader reader(in);
    std::vector<std::string> record;
    bool header_seen = false;
    while (reader.next(record)) {
        if (!record.empty() && !record[0].empty() && record[0][0] == '#') {
            continue;  // version banner or user comment
        }
        if (!header_seen) {
            const std::vector<std::string> expected = {"address", "label", "kind", "source"};
            if (record != expected) {
                throw DataError("label store header mismatch in " + path.string());
            }
            header_seen = true;
            continue;
        }
        if (record.size() != 4) {
            throw DataError("label store row " + std::to_string(reader.record_line()) +
                            ": expected 4 fields, got " + std::to_string(record.size()));
        }
        const auto address = parse_address(record[0]);
        if (!address) {
            throw DataError("label store row " + std::to_string(reader.record_line()) +
                            ": bad address " + record[0]);
        }
        const auto kind = parse_kind(record[2]);
        if (!kind) {
            throw DataError("label store row " + std::to_string(reader.record_line()) +
                            ": bad kind " + record[2]);
        }
        if (store.entries_.contains(*address)) {
            throw DataError("label store row " + std::to_string(reader.record_line()) +
                            ": duplicate address " + record[0]);
        }
        store.entries_[*address] = LabelEntry{record[1], *kind, record[3]};
    }
    if (!header_seen) {
        throw DataError("label store missing header: " + path.string());
    }
    return store;
}

LabelStore LabelStore::load_if_exists(const std::filesystem::path& path) {
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) {
        return LabelStore{};
    }
    return load(path);
}

void LabelStore::save(const std::filesystem::path& path) const {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write label store: " + path.string());
    }
    out << "# netdec-labels v1\n";
    out << "address,label,kind,source\n";
    for (const auto& [address, entry] : entries_) {
        out << to_string(address) << ',' << csv_escape(entry.label) << ','
            << kind_name(entry.kind) << ',' << csv_escape(entry.source) << '\n';
    }
    if (!out) {
        throw IoError("write failure: " + path.string());
    }
}

const LabelEntry* LabelStore::find(const Address& address) const {
    const auto it = entries_.find(address);
    return it == entries_.end() ? nullptr : &it->second;
}

void LabelStore::set(const Address& address, LabelEntry entry) {
    entries_[address] = std::move(entry);
}

EthRpcClient::EthRpcClient(const std::string& url, int attempts) : attempts_(attempts) {
    std::string_view rest(url);
    constexpr std::string_view kHttp = "http://";
    constexpr std::string_view kHttps = "https://";
    if (rest.substr(0, kHttps.size()) == kHttps) {
        throw IoError("https rpc endpoints are not supported; use http");
    }
    if (rest.substr(0, kHttp.size()) != kHttp) {
        throw IoError("unsupported rpc url (expected http://): " + url);
    }
    rest.remove_prefix(kHttp.size());
    const auto slash = rest.find('/');
    std::string_view hostport = rest.substr(0, slash);
    path_ = slash == std::string_view::npos ? "/" : std::string(rest.substr(slash));
    const auto colon = hostport.rfind(':');
    if (colon == std::string_view::npos) {
        host_ = std::string(hostport);
    } else {
        host_ = std::string(hostport.substr(0, colon));
        const std::string_view port_text = hostport.substr(colon + 1);
        int port = 0;
        for (char c : port_text) {
            if (c < '0' || c > '9' || port > 65535) {
                port = -1;
                break;
            }
            port = port * 10 + (c - '0');
        }
        if (port_text.empty() || port <= 0 || port > 65535) {
            throw IoError("bad port in rpc url: " + url);
        }
        port_ = port;
    }
    if (host_.empty()) {
        throw IoError("missing host in rpc url: " + url);
    }
    if (attempts_ < 1) {
        attempts_ = 1;
    }
}

std::optional<std::string> EthRpcClient::code_at(const Address& address) {
    const nlohmann::json request = {
        {"jsonrpc", "2.0"},
        {"id", 1},
        {"method", "eth_getCode"},
        {"params", {to_string(address), "latest"}},
    };
    const std::string body = request.dump();
    for (int attempt = 0; attempt < attempts_; ++attempt) {
        httplib::Client client(host_, port_);
        client.set_connection_timeout(5, 0);
        client.set_read_timeout(10, 0);
        auto res = client.Post(path_, body, "application/json");
        if (!res || res->status != 200) {
            continue;
        }
        const auto parsed = nlohmann::json::parse(res->body, nullptr, false);
        if (parsed.is_discarded() || !parsed.is_object()) {
            continue;
        }
        const auto it = parsed.find("result");
        if (it != parsed.end() && it->is_string()) {
            std::string code = it->get<std::string>();
            if (code.rfind("0x", 0) == 0) {
                return code;
            }
        }
    }
    return std::nullopt;
}

AddressKind classify_address(const Address& address, LabelStore& labels, CodeLookup* rpc,
                             std::vector<std::string>* warnings) {
    if (is_null(address)) {
        throw DataError("cannot classify the null address");
    }
    const LabelEntry* entry = labels.find(address);
    if (entry != nullptr && entry->kind != AddressKind::unknown) {
        return entry->kind;
    }
    if (rpc != nullptr) {
        if (const auto code = rpc->code_at(address)) {
            const AddressKind kind =
                code->size() > 2 ? AddressKind::contract : AddressKind::eoa;
            LabelEntry updated = entry != nullptr ? *entry : LabelEntry{};
            updated.kind = kind;
            updated.source = "rpc";
            labels.set(address, std::move(updated));
            return kind;
        }
        if (warnings != nullptr) {
            warnings->push_back("code lookup failed for " + to_string(address) +
                                "; kind left unknown");
        }
    }
    return AddressKind::unknown;
}

std::map<Address, std::uint64_t> tally_core_days(const std::vector<DayCore>& results) {
    std::map<Address, std::uint64_t> tally;
    std::set<CivilDay> seen;
    for (const auto& result : results) {
        if (!seen.insert(result.day).second) {
            throw DataError("duplicate day in core results: " + format_day(result.day));
        }
        for (const Address& address : result.core) {
            ++tally[address];
        }
    }
    return tally;
}

namespace {

// Linear-interpolation quantile over a sorted sample.
double quantile(const std::vector<double>& sorted, double p) {
    const double h = static_cast<double>(sorted.size() - 1) * p;
    const auto lo = static_cast<std::size_t>(h);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

std::vector<Address> flag_outliers(const std::map<Address, std::uint64_t>& tallies,
                                   const std::map<Address, AddressKind>& kinds) {
    if (tallies.empty()) {
        throw DataError("no core-day tallies to flag");
    }
    std::map<AddressKind, std::vector<std::pair<Address, double>>> groups;
    for (const auto& [address, days] : tallies) {
        const auto it = kinds.find(address);
        if (it == kinds.end()) {
            throw DataError("missing kind for " + to_string(address));
        }
        groups[it->second].push_back({address, static_cast<double>(days)});
    }
    std::vector<Address> flagged;
    for (const auto& [kind, members] : groups) {
        if (members.size() < 4) {
            continue;
        }
        std::vector<double> values;
        values.reserve(members.size());
        for (const auto& [address, value] : members) {
            values.push_back(value);
        }
        std::sort(values.begin(), values.end());
        const double q1 = quantile(values, 0.25);
        const double q3 = quantile(values, 0.75);
        const double fence = q3 + 1.5 * (q3 - q1);
        for (const auto& [address, value] : members) {
            if (value > fence) {
                flagged.push_back(address);
            }
        }
    }
    std::sort(flagged.begin(), flagged.end());
    return flagged;
}

std::vector<AddressProfile> build_profiles(const std::map<Address, std::uint64_t>& tallies,
                                           LabelStore& labels, CodeLookup* rpc,
                                           std::vector<std::string>* warnings) {
    std::vector<AddressProfile> profiles;
    if (tallies.empty()) {
        return profiles;
    }
    std::map<Address, AddressKind> kinds;
    for (const auto& [address, days] : tallies) {
        kinds[address] = classify_address(address, labels, rpc, warnings);
    }
    const auto outliers = flag_outliers(tallies, kinds);
    profiles.reserve(tallies.size());
    for (const auto& [address, days] : tallies) {
        AddressProfile profile;
        profile.address = address;
        profile.kind = kinds[address];
        if (const LabelEntry* entry = labels.find(address)) {
            profile.label = entry->label;
        }
        profile.core_days = days;
        profile.outlier = std::binary_search(outliers.begin(), outliers.end(), address);
        profiles.push_back(std::move(profile));
    }
    std::sort(profiles.begin(), profiles.end(),
              [](const AddressProfile& a, const AddressProfile& b) {
                  if (a.core_days != b.core_days) {
                      return a.core_days > b.core_days;
                  }
                  return a.address < b.address;
              });
    return profiles;
}

}  // namespace netdec
