#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "netdec/address.hpp"
#include "netdec/common.hpp"
#include "netdec/timeutil.hpp"

namespace netdec {

enum class AddressKind {
    contract,
    eoa,
    unknown,
};

// "CA", "EOA", "unknown"
std::string_view kind_name(AddressKind kind);
std::optional<AddressKind> parse_kind(std::string_view text);

struct LabelEntry {
    std::string label;
    AddressKind kind = AddressKind::unknown;
    std::string source;
};

// Address annotations persisted as versioned CSV. Entries are keyed by
// canonical address; saves are sorted so the file is diff-stable.
class LabelStore {
public:
    static LabelStore load(const std::filesystem::path& path);
    static LabelStore load_if_exists(const std::filesystem::path& path);
    void save(const std::filesystem::path& path) const;

    const LabelEntry* find(const Address& address) const;
    void set(const Address& address, LabelEntry entry);
    std::size_t size() const { return entries_.size(); }
    const std::map<Address, LabelEntry>& entries() const { return entries_; }

private:
    std::map<Address, LabelEntry> entries_;
};

// Source of contract bytecode presence. Implementations retry internally;
// nullopt means the lookup could not be completed.
class CodeLookup {
public:
    virtual ~CodeLookup() = default;
    // Hex-encoded code at the latest block: "0x" when none is deployed.
    virtual std::optional<std::string> code_at(const Address& address) = 0;
};

// JSON-RPC client for the code-at-address query. Only plain http
// endpoints are supported.
class EthRpcClient : public CodeLookup {
public:
    explicit EthRpcClient(const std::string& url, int attempts = 3);
    std::optional<std::string> code_at(const Address& address) override;

private:
    std::string host_;
    int port_ = 80;
    std::string path_;
    int attempts_;
};

// Label store wins; otherwise the code lookup decides and the verdict is
// cached back into the store with source "rpc". Without either, unknown.
AddressKind classify_address(const Address& address, LabelStore& labels, CodeLookup* rpc,
                             std::vector<std::string>* warnings = nullptr);

struct DayCore {
    CivilDay day{};
    std::vector<Address> core;
};

// Days each address appeared in a core. Addresses never in a core are
// absent; a repeated day is an error.
std::map<Address, std::uint64_t> tally_core_days(const std::vector<DayCore>& results);

// Tukey fence per address-kind group: flag tallies strictly above
// Q3 + 1.5*IQR (linear-interpolation quartiles). Groups smaller than 4
// produce no flags.
std::vector<Address> flag_outliers(const std::map<Address, std::uint64_t>& tallies,
                                   const std::map<Address, AddressKind>& kinds);

struct AddressProfile {
    Address address;
    AddressKind kind = AddressKind::unknown;
    std::string label;
    std::uint64_t core_days = 0;
    bool outlier = false;
};

// Classification + outlier flags over a core-day tally, ordered by
// descending core_days then ascending address.
std::vector<AddressProfile> build_profiles(const std::map<Address, std::uint64_t>& tallies,
                                           LabelStore& labels, CodeLookup* rpc,
                                           std::vector<std::string>* warnings = nullptr);

}  // namespace netdec
