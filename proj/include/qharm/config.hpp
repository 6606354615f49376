#pragma once

#include <map>
#include <string>

namespace qharm {

enum class OutputFormat { Json, Csv };

struct RunConfig {
    double q = 0.7;
    int precision_bits = 128;
    int window = 512;
    double tol = 1e-12;
    int mmin = -3, mmax = 3;
    OutputFormat output = OutputFormat::Json;

    // Throws DomainError naming the offending field.
    void validate() const;
    // Applies "key = value" pairs; keys as the long flags without dashes
    // (q, precision-bits, window, tol, mmin, mmax, output).  '_' and '-' are
    // interchangeable.  Unknown keys are an error.
    void apply(const std::map<std::string, std::string>& kv);
};

// Flat "key = value" file; '#' starts a comment; blank lines ignored.
std::map<std::string, std::string> read_config_file(const std::string& path);

}  // namespace qharm
