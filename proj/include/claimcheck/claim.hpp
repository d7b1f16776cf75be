#pragma once

#include <string>
#include <string_view>

namespace claimcheck {

struct Claim {
    std::string claim_id;
    std::string text;
};

/// Binary verdict. SUPPORTED is the positive class everywhere.
enum class Label { supported, refuted };

std::string_view to_string(Label label);

} // namespace claimcheck
