#include "faithcheck/varset.hpp"

#include <cctype>

#include "faithcheck/errors.hpp"

namespace faithcheck {

namespace {

bool valid_name(std::string_view s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    for (char c : s.substr(1))
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

}  // namespace

VarSet VarSet::of(std::vector<std::string> names) {
    if (names.empty() || names.size() > kMaxVars)
        throw InputError("variable count must be between 1 and 6, got " + std::to_string(names.size()));
    for (const auto& n : names) {
        if (!valid_name(n)) throw ParseError("invalid variable name '" + n + "'");
    }
    for (size_t i = 0; i < names.size(); ++i)
        for (size_t j = i + 1; j < names.size(); ++j)
            if (names[i] == names[j]) throw InputError("duplicate variable name '" + names[i] + "'");
    VarSet vs;
    vs.names_ = std::move(names);
    return vs;
}

VarSet VarSet::xyz() {
    return of({"X", "Y", "Z"});
}

std::optional<int> VarSet::index_of(std::string_view name) const {
    for (size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<int>(i);
    return std::nullopt;
}

std::string VarSet::mask_names(VarMask m) const {
    std::string out;
    for (int i = 0; i < size(); ++i) {
        if ((m >> i) & 1u) {
            if (!out.empty()) out += ',';
            out += names_[static_cast<size_t>(i)];
        }
    }
    return out;
}

}  // namespace faithcheck
