#include "noisemod/csv.hpp"

#include "noisemod/errors.hpp"

#include <charconv>
#include <cmath>

namespace noisemod {

std::string format_double(double value)
{
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

void write_ber_csv(std::ostream& os, const SweepResult& sim, const SweepResult& theory)
{
    const SweepCurve& s = sim.curve("ber_sim");
    const SweepCurve& t = theory.curve("ber_theory");
    require(s.points.size() == t.points.size(), "write_ber_csv: simulation and theory grids differ");
    os << sim.axis_name << ",ber_sim,ber_theory,trials,errors,stderr,theory_ok\n";
    for (std::size_t i = 0; i < s.points.size(); ++i) {
        const SweepPoint& p = s.points[i];
        const SweepPoint& q = t.points[i];
        os << format_double(p.axis_value) << ',' << format_double(p.estimate) << ','
           << format_double(q.estimate) << ',' << p.trial_count << ',' << p.error_count << ','
           << format_double(p.standard_error) << ',' << (q.ok ? 1 : 0) << '\n';
    }
}

void write_theory_csv(std::ostream& os, const SweepResult& theory)
{
    const SweepCurve& t = theory.curve("ber_theory");
    os << theory.axis_name << ",ber_theory,theory_ok\n";
    for (const SweepPoint& q : t.points)
        os << format_double(q.axis_value) << ',' << format_double(q.estimate) << ',' << (q.ok ? 1 : 0) << '\n';
}

void write_eh_csv(std::ostream& os, const SweepResult& eh)
{
    require(!eh.curves.empty(), "write_eh_csv: no curves");
    os << eh.axis_name;
    for (const SweepCurve& c : eh.curves)
        os << ',' << c.label;
    os << '\n';
    const std::size_t n = eh.curves.front().points.size();
    for (std::size_t i = 0; i < n; ++i) {
        os << format_double(eh.curves.front().points[i].axis_value);
        for (const SweepCurve& c : eh.curves)
            os << ',' << format_double(c.points[i].estimate);
        os << '\n';
    }
}

} // namespace noisemod
