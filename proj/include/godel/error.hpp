#pragma once

#include <stdexcept>
#include <string>

namespace godel {

// Error categories mirrored in the CLI's error JSON and exit codes.
enum class errc {
    input,       // malformed or out-of-contract arguments
    variety,     // algebra/forest outside the requested variety G_n
    structural,  // input object violates a structural assumption (cycles, non-forest, ...)
    resource,    // configurable enumeration/search cap exceeded
    internal,    // invariant that theory guarantees failed; indicates a bug
};

const char* errc_name(errc c);

class godel_error : public std::runtime_error {
public:
    godel_error(errc code, std::string detail, std::string witness_json = {})
        : std::runtime_error(detail),
          code_(code),
          detail_(std::move(detail)),
          witness_json_(std::move(witness_json)) {}

    errc code() const { return code_; }
    const std::string& detail() const { return detail_; }
    // Serialized JSON object describing a witness, or empty if none.
    const std::string& witness_json() const { return witness_json_; }

private:
    errc code_;
    std::string detail_;
    std::string witness_json_;
};

[[noreturn]] inline void throw_input(std::string detail, std::string witness = {}) {
    throw godel_error(errc::input, std::move(detail), std::move(witness));
}
[[noreturn]] inline void throw_variety(std::string detail, std::string witness = {}) {
    throw godel_error(errc::variety, std::move(detail), std::move(witness));
}
[[noreturn]] inline void throw_structural(std::string detail, std::string witness = {}) {
    throw godel_error(errc::structural, std::move(detail), std::move(witness));
}
[[noreturn]] inline void throw_resource(std::string detail) {
    throw godel_error(errc::resource, std::move(detail));
}
[[noreturn]] inline void throw_internal(std::string detail) {
    throw godel_error(errc::internal, std::move(detail));
}

// Default cap on enumerated objects (algebra elements, structure points,
// search nodes are capped at 100x this).  GODEL_CAP or --cap overrides.
std::size_t enumeration_cap();
void set_enumeration_cap(std::size_t cap);

}  // namespace godel
