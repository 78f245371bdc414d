#include "pathhom/report.hpp"

#include <json.hpp>

namespace pathhom {

using json = nlohmann::ordered_json;

std::string digraph_to_json(const Digraph& X) {
    json j;
    j["vertices"] = X.names();
    j["arrows"] = json::array();
    for (auto [u, v] : X.arrows()) j["arrows"].push_back({X.name(u), X.name(v)});
    return j.dump();
}

std::string homology_to_json(const HomologySummary& h, bool with_z) {
    json rows = json::array();
    for (size_t n = 0; n < h.degrees.size(); ++n) {
        const auto& d = h.degrees[n];
        json row;
        row["degree"] = n;
        if (with_z) {
            row["free_rank"] = d.free_rank;
            row["torsion"] = json::array();
            for (const Int& t : d.torsion) row["torsion"].push_back(t.str());
        }
        row["field_ranks"] = json::object();
        for (const auto& [k, v] : d.field_ranks) row["field_ranks"][k] = v;
        rows.push_back(std::move(row));
    }
    return rows.dump();
}

std::string mpss_to_json(int page, Ring field, const std::vector<MpssEntry>& entries) {
    json j;
    j["page"] = page;
    j["field"] = field.key();
    j["entries"] = json::array();
    for (const auto& e : entries) {
        json row;
        row["s"] = e.s;       // filtration level
        row["n"] = e.n;       // total degree
        row["i"] = e.n - e.s; // complementary presentation
        row["j"] = e.s;
        row["rank"] = e.rank;
        j["entries"].push_back(std::move(row));
    }
    return j.dump();
}

std::string clusters_to_json(const std::map<ClusterKey, long>& ranks) {
    json arr = json::array();
    for (const auto& [key, rank] : ranks) {
        json row;
        row["tail"] = key.tail;
        row["head"] = key.head;
        if (key.voltage) row["voltage"] = *key.voltage;
        row["rank"] = rank;
        arr.push_back(std::move(row));
    }
    return arr.dump();
}

std::string abelian_invariants_to_json(const AbelianInvariants& a) {
    json j;
    j["rank"] = a.rank;
    j["torsion"] = json::array();
    for (const Int& t : a.torsion) j["torsion"].push_back(t.str());
    return j.dump();
}

std::string exhaust_to_json(const ExhaustReport& r) {
    json j;
    j["stage_ranks"] = r.stage_ranks;
    j["windows"] = json::array();
    for (const auto& w : r.windows) {
        json row;
        row["from"] = w.from;
        row["to"] = w.to;
        row["image_rank"] = w.image_rank;
        j["windows"].push_back(std::move(row));
    }
    j["stabilized_image_rank"] = r.stabilized_image_rank;
    return j.dump();
}

std::string deck_to_json(const DeckGroup& g, const Digraph& total) {
    json j;
    j["order"] = g.order();
    j["elements"] = json::array();
    for (const auto& phi : g.elements) {
        json perm = json::object();
        for (int v = 0; v < total.num_vertices(); ++v) perm[total.name(v)] = total.name(phi[v]);
        j["elements"].push_back(std::move(perm));
    }
    j["table"] = g.table;
    return j.dump();
}

std::string relations_to_json(const std::vector<RelationWord>& rels,
                              const std::vector<std::string>& gen_names) {
    json arr = json::array();
    for (const auto& r : rels) {
        json row;
        row["left"] = json::array();
        for (int s : r.left) row["left"].push_back(gen_names.at(s));
        row["right"] = json::array();
        for (int s : r.right) row["right"].push_back(gen_names.at(s));
        arr.push_back(std::move(row));
    }
    return arr.dump();
}

}  // namespace pathhom
