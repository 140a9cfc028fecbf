#ifndef DTASA_ERRORS_HPP
#define DTASA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dtasa {

struct DegenerateStudy : std::runtime_error {
    explicit DegenerateStudy(const std::string& msg) : std::runtime_error(msg) {}
};

struct SingularCovariance : std::runtime_error {
    explicit SingularCovariance(const std::string& msg) : std::runtime_error(msg) {}
};

struct OptimizationFailed : std::runtime_error {
    explicit OptimizationFailed(const std::string& msg) : std::runtime_error(msg) {}
};

struct BracketingFailed : std::runtime_error {
    explicit BracketingFailed(const std::string& msg) : std::runtime_error(msg) {}
};

struct NonInvertibleHessian : std::runtime_error {
    explicit NonInvertibleHessian(const std::string& msg) : std::runtime_error(msg) {}
};

struct EmptySelection : std::runtime_error {
    explicit EmptySelection(const std::string& msg) : std::runtime_error(msg) {}
};

struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

struct CsvError : std::runtime_error {
    explicit CsvError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace dtasa

#endif
