#pragma once

#include <stdexcept>
#include <string>

namespace cohomord {

// Thrown when a configurable work budget (search nodes, clique count,
// expression size, halving iterations) runs out.  Budget exits are loud:
// callers must never conflate them with a definite negative answer.
class budget_exhausted : public std::runtime_error {
public:
    explicit budget_exhausted(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a requested materialization or encoding exceeds a size cap.
class cap_exceeded : public std::runtime_error {
public:
    explicit cap_exceeded(const std::string& what) : std::runtime_error(what) {}
};

} // namespace cohomord
