#include "mapspace/report.hpp"

#include <sstream>

#include "mapspace/free_model.hpp"

namespace mapspace {

namespace {

nlohmann::json dl_json(int v)
{
    if (dl_is_infinite(v)) return "inf";
    return v;
}

std::string join_ints(const std::vector<int>& xs)
{
    std::string s;
    for (int x : xs) {
        if (!s.empty()) s += ", ";
        s += std::to_string(x);
    }
    return s;
}

}  // namespace

std::string render_human(const Report& r)
{
    std::ostringstream os;
    os << "command: " << r.command << "\n";
    for (const auto& in : r.inputs)
        os << "input " << in.role << ": " << in.name << " (" << in.kind << ", digest " << in.digest
           << ")\n";

    std::string inv;
    auto item = [&](const char* key, const std::optional<int>& v, bool as_dl = false) {
        if (!v) return;
        if (!inv.empty()) inv += ", ";
        inv += std::string(key) + " = " + (as_dl ? dl_str(*v) : std::to_string(*v));
    };
    item("dl", r.dl, true);
    item("cup", r.cup);
    item("conn", r.conn, true);
    item("dim", r.dim);
    item("nilpotency", r.nilpotency);
    if (!inv.empty()) os << "invariants: " << inv << "\n";

    if (!r.verdict.empty()) os << "verdict: " << r.verdict << "\n";
    if (!r.generators.empty()) os << "generators: degrees " << join_ints(r.generators) << "\n";
    if (r.witness)
        os << "witness: y = " << r.witness->y << ", r = " << r.witness->r
           << ", omega = " << r.witness->omega << ", obstruction degree = " << r.witness->degree
           << "\n";
    if (r.tower) {
        os << "tower: r = " << r.tower->r << ", m_eff = " << r.tower->m_eff << ", s = " << r.tower->s
           << ", achieved = " << r.tower->achieved
           << (r.tower->matches_paper_s ? " (matches s)" : " (differs from s)")
           << (r.tower->hypothesis_met ? "" : " [dim > conn: model-level chain only]") << "\n";
        for (const auto& st : r.tower->stages) {
            os << "  stage " << st.k << (st.base ? " (base)" : "") << ": ideal power " << st.power
               << ", fiber dim " << st.fiber_dim;
            if (st.fiber_dim > 0)
                os << ", EM degrees [" << join_ints(st.fiber_degrees) << "]"
                   << ", zero differential: " << (st.zero_differential ? "yes" : "NO")
                   << ", quasi-iso: " << (st.quasi_iso ? "yes" : "NO");
            if (!st.quotient_degrees.empty())
                os << ", stage model degrees [" << join_ints(st.quotient_degrees) << "]";
            os << "\n";
        }
    }
    for (const std::string& line : r.detail) os << line << "\n";
    os << "timings_ms: " << r.timings_ms << "\n";
    return os.str();
}

nlohmann::json render_json(const Report& r)
{
    nlohmann::json j;
    j["command"] = r.command;
    j["inputs"] = nlohmann::json::array();
    for (const auto& in : r.inputs)
        j["inputs"].push_back({{"role", in.role}, {"name", in.name}, {"kind", in.kind},
                               {"digest", in.digest}});

    nlohmann::json inv;
    inv["dl"] = r.dl ? dl_json(*r.dl) : nlohmann::json();
    inv["cup"] = r.cup ? nlohmann::json(*r.cup) : nlohmann::json();
    inv["conn"] = r.conn ? (dl_is_infinite(*r.conn) ? nlohmann::json("inf") : nlohmann::json(*r.conn))
                         : nlohmann::json();
    inv["dim"] = r.dim ? nlohmann::json(*r.dim) : nlohmann::json();
    inv["nilpotency"] = r.nilpotency ? nlohmann::json(*r.nilpotency) : nlohmann::json();
    j["invariants"] = inv;

    j["verdict"] = r.verdict;
    j["generators"] = r.generators;

    if (r.witness)
        j["witness"] = {{"y", r.witness->y},
                        {"r", r.witness->r},
                        {"omega", r.witness->omega},
                        {"degree", r.witness->degree}};
    else
        j["witness"] = nlohmann::json();

    if (r.tower) {
        nlohmann::json stages = nlohmann::json::array();
        for (const auto& st : r.tower->stages)
            stages.push_back({{"k", st.k},
                              {"power", st.power},
                              {"base", st.base},
                              {"fiber_dim", st.fiber_dim},
                              {"fiber_degrees", st.fiber_degrees},
                              {"quotient_degrees", st.quotient_degrees},
                              {"zero_differential", st.zero_differential},
                              {"quasi_iso", st.quasi_iso}});
        j["tower"] = {{"stages", stages},
                      {"s", r.tower->s},
                      {"achieved", r.tower->achieved},
                      {"m_eff", r.tower->m_eff},
                      {"r", r.tower->r},
                      {"matches_paper_s", r.tower->matches_paper_s},
                      {"hypothesis_met", r.tower->hypothesis_met}};
    } else {
        j["tower"] = nlohmann::json();
    }

    j["timings_ms"] = r.timings_ms;
    if (!r.data.empty()) j["data"] = r.data;
    return j;
}

}  // namespace mapspace
