#ifndef CHSYS_REPORT_HPP
#define CHSYS_REPORT_HPP

#include <cstddef>
#include <map>
#include <sstream>
#include <string>

namespace chsys {

// Named max-norm residuals of a state (or of a whole trajectory), each with
// the node index where the maximum was attained.
struct ResidualReport {
    struct Entry {
        double value = 0.0;
        std::ptrdiff_t index = -1;
    };

    std::map<std::string, Entry> entries;
    double t = 0.0;
    bool valid = true;

    void set(const std::string& name, double value, std::ptrdiff_t index = -1) {
        entries[name] = Entry{value, index};
    }

    double get(const std::string& name) const {
        auto it = entries.find(name);
        return it == entries.end() ? 0.0 : it->second.value;
    }

    double max_value() const {
        double m = 0.0;
        for (const auto& [k, e] : entries) m = std::max(m, e.value);
        return m;
    }

    bool all_below(double tol) const { return max_value() <= tol; }

    // Keeps the worse entry per name; used to summarize trajectories.
    void merge_max(const ResidualReport& other) {
        for (const auto& [k, e] : other.entries) {
            auto it = entries.find(k);
            if (it == entries.end() || e.value > it->second.value) entries[k] = e;
        }
        valid = valid && other.valid;
    }

    std::string summary() const {
        std::ostringstream os;
        os.precision(6);
        os << "t=" << t;
        for (const auto& [k, e] : entries) os << " " << k << "=" << e.value;
        return os.str();
    }
};

} // namespace chsys

#endif
