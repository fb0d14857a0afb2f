#ifndef EXPOSOME_ERRORS_HPP
#define EXPOSOME_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace exposome {

struct Error : std::runtime_error {
    Error(std::string code, const std::string &what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
    const std::string &code() const noexcept { return code_; }

  private:
    std::string code_;
};

struct EmptyCodeError : Error {
    explicit EmptyCodeError(const std::string &what) : Error("EmptyCode", what) {}
};

struct EmptySegmentError : Error {
    explicit EmptySegmentError(const std::string &what) : Error("EmptySegment", what) {}
};

struct CoverageDomainError : Error {
    explicit CoverageDomainError(const std::string &what) : Error("CoverageDomain", what) {}
};

struct ParamLoosenedError : Error {
    explicit ParamLoosenedError(const std::string &what) : Error("ParamLoosened", what) {}
};

struct BadCutoffsError : Error {
    explicit BadCutoffsError(const std::string &what) : Error("BadCutoffs", what) {}
};

struct UnknownAxisError : Error {
    explicit UnknownAxisError(const std::string &what) : Error("UnknownAxis", what) {}
};

struct IoFailureError : Error {
    explicit IoFailureError(const std::string &what) : Error("IoFailure", what) {}
};

} // namespace exposome

#endif
