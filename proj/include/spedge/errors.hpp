#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spedge {

enum class graph_errc { loop_edge, duplicate_class, bad_vertex_id, zero_multiplicity };

inline const char* to_string(graph_errc code) {
    switch (code) {
        case graph_errc::loop_edge: return "loop edge";
        case graph_errc::duplicate_class: return "duplicate edge class";
        case graph_errc::bad_vertex_id: return "bad vertex id";
        case graph_errc::zero_multiplicity: return "zero multiplicity";
    }
    return "graph error";
}

class graph_error : public std::invalid_argument {
public:
    graph_error(graph_errc code, const std::string& what)
        : std::invalid_argument(std::string(to_string(code)) + ": " + what), code_(code) {}

    graph_errc code() const noexcept { return code_; }

private:
    graph_errc code_;
};

/// An operation was called on a state that does not satisfy its precondition.
class precondition_violated : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class vertex_absent : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// A reduction frame does not fit the coloring being rebuilt. Always a bug.
class trace_mismatch : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class shape_mismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class budget_exceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class not_series_parallel : public std::runtime_error {
public:
    not_series_parallel() : std::runtime_error("graph is not series-parallel") {}
};

class parse_error : public std::runtime_error {
public:
    parse_error(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace spedge
