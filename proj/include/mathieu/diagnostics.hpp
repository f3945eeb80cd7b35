#pragma once

#include <iosfwd>
#include <string_view>

namespace mathieu::diag {

// Warnings (truncation, precision fallbacks) go to a single diagnostic
// stream, std::cerr unless redirected.  Writes are serialized.
void warn(std::string_view message);

// Returns the previous stream.  Passing nullptr silences diagnostics.
std::ostream* set_stream(std::ostream* os);

// Number of warnings emitted since start-up (or the last reset).
long warning_count();
void reset_warning_count();

}  // namespace mathieu::diag
