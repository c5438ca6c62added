#pragma once

#include <stdexcept>
#include <string>

namespace legwalk {

/// Query bound lies outside the range a PrimeTable was sieved for.
class out_of_range_error : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Modulus is not a valid prime (or Gaussian prime) for the requested symbol.
class invalid_modulus_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input outside an operation's domain (gcd(0,0), bad APClass, ...).
class undefined_input_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class no_inverse_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A statistic whose denominator is empty or degenerate.
class undefined_statistic_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class cache_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class config_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace legwalk
