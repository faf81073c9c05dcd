#include <algorithm>
#include <map>
#include <set>

#include "spets/orders.hpp"
#include "spets/uch.hpp"

namespace spets {

std::vector<std::vector<std::string>> principal_blocks(const UchTable& table) {
    std::vector<std::vector<std::string>> out(static_cast<std::size_t>(table.family_count()));
    for (const auto& r : table.rows)
        if (r.principal() && r.family > 0) out[static_cast<std::size_t>(r.family - 1)].push_back(r.hc_relative);
    return out;
}

std::vector<std::vector<std::string>> cyclic_blocks(const UchTable& table) {
    std::vector<std::pair<long, long>> keys;
    std::vector<std::vector<std::string>> out;
    for (const auto& r : table.rows) {
        if (!r.principal()) continue;
        std::pair<long, long> k{r.a(), r.A()};
        auto it = std::find(keys.begin(), keys.end(), k);
        if (it == keys.end()) {
            keys.push_back(k);
            out.push_back({r.hc_relative});
        } else {
            out[static_cast<std::size_t>(it - keys.begin())].push_back(r.hc_relative);
        }
    }
    return out;
}

void set_markers(UchTable& table, const ReflectionCoset& G) {
    const auto& t = G.character_table();
    auto fd = fake_degrees(G);
    for (int f = 1; f <= table.family_count(); ++f) {
        auto mem = table.family(f);
        if (mem.empty()) continue;
        long a = table.rows[mem[0]].a(), A = table.rows[mem[0]].A();
        for (std::size_t i : mem) {
            auto& r = table.rows[i];
            r.marker = Marker::none;
            if (!r.principal()) continue;
            auto th = t.index_of(r.hc_relative);
            if (!th) continue;
            const auto& feg = fd[*th];
            if (feg.valuation() == a) r.marker = Marker::special;
            else if (feg.degree() == A) r.marker = Marker::cospecial;
        }
    }
}

std::vector<Family> families(UchTable& table, const ReflectionCoset& G, const std::vector<std::vector<std::string>>& blocks,
                             const std::vector<Cyclo>& centre) {
    std::map<std::string, int> block_of;
    for (std::size_t b = 0; b < blocks.size(); ++b)
        for (const auto& th : blocks[b]) block_of[th] = static_cast<int>(b) + 1;

    const std::size_t nb = blocks.size();
    std::vector<std::optional<std::pair<long, long>>> aA(nb);
    for (auto& r : table.rows) {
        if (!r.principal()) continue;
        auto it = block_of.find(r.hc_relative);
        if (it == block_of.end()) throw std::runtime_error("families: " + r.hc_relative + " lies in no block");
        r.family = it->second;
        auto& slot = aA[static_cast<std::size_t>(r.family - 1)];
        std::pair<long, long> k{r.a(), r.A()};
        if (!slot) slot = k;
        else if (*slot != k)
            throw std::runtime_error("families: (a, A) not constant on block " + std::to_string(r.family));
    }

    // Ennola permutes families; the image of a block is read off its principal
    // characters whose images are principal again.
    std::vector<std::vector<EnnolaMatch>> ennola;
    std::vector<std::map<int, std::set<int>>> image_block;
    for (const auto& z : centre) {
        if (z.is_one()) continue;
        ennola.push_back(ennola_transform(table, z));
        auto& ib = image_block.emplace_back();
        for (const auto& m : ennola.back())
            if (m.target && table.rows[m.source].principal() && table.rows[*m.target].principal())
                ib[table.rows[m.source].family].insert(table.rows[*m.target].family);
    }

    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        auto& r = table.rows[i];
        if (r.principal()) continue;
        std::vector<int> cand;
        for (std::size_t b = 0; b < nb; ++b)
            if (aA[b] && aA[b]->first == r.a() && aA[b]->second == r.A()) cand.push_back(static_cast<int>(b) + 1);
        if (cand.empty()) throw std::runtime_error("families: no block with the (a, A) of " + r.name);
        if (cand.size() > 1) {
            std::set<int> via;
            for (std::size_t k = 0; k < ennola.size(); ++k)
                for (const auto& m : ennola[k]) {
                    if (m.target != i || !table.rows[m.source].principal()) continue;
                    auto it = image_block[k].find(table.rows[m.source].family);
                    if (it == image_block[k].end() || it->second.size() != 1) continue;
                    int f = *it->second.begin();
                    if (std::find(cand.begin(), cand.end(), f) != cand.end()) via.insert(f);
                }
            if (via.size() != 1)
                throw std::runtime_error("families: cannot separate the candidate blocks for " + r.name);
            cand = {*via.begin()};
        }
        r.family = cand.front();
    }

    set_markers(table, G);
    std::vector<Family> out;
    for (int f = 1; f <= static_cast<int>(nb); ++f) {
        Family F;
        F.id = f;
        F.members = table.family(f);
        if (F.members.empty()) continue;
        F.a = table.rows[F.members[0]].a();
        F.A = table.rows[F.members[0]].A();
        for (std::size_t i : F.members) {
            if (table.rows[i].marker == Marker::special && !F.special) F.special = i;
            if (table.rows[i].marker == Marker::cospecial && !F.cospecial) F.cospecial = i;
        }
        if (!F.cospecial) F.cospecial = F.special;
        out.push_back(std::move(F));
    }
    return out;
}

}  // namespace spets
