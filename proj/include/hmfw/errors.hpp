#ifndef HMFW_ERRORS_HPP
#define HMFW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hmfw {

// Error taxonomy, kept deliberately small:
//   structural_error  -- malformed objects (bad lengths, invalid indices, p not an odd prime)
//   weight_domain_error -- values outside an operation's documented domain (k_tau < 1, |d_i| > p)
//   inapplicable_error  -- a theorem-shaped check was asked about a weight its hypotheses exclude;
//                          carries the name of the failed condition, never a silent pass
//   invariant_error   -- something the mathematics guarantees failed to hold; always a bug or a
//                        genuine counterexample, and either way worth a loud stop

struct structural_error : std::invalid_argument {
    explicit structural_error(const std::string& what) : std::invalid_argument(what) {}
};

struct weight_domain_error : std::domain_error {
    explicit weight_domain_error(const std::string& what) : std::domain_error(what) {}
};

struct inapplicable_error : std::runtime_error {
    std::string condition; // short identifier of the hypothesis that failed
    inapplicable_error(std::string cond, const std::string& what)
        : std::runtime_error(what), condition(std::move(cond)) {}
};

struct invariant_error : std::logic_error {
    explicit invariant_error(const std::string& what) : std::logic_error(what) {}
};

} // namespace hmfw

#endif
