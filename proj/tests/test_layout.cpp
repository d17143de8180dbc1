#include "lsc/benchgen.hpp"
#include "lsc/layout.hpp"
#include "lsc/occupancy.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <set>

using namespace lsc;

TEST(Layout, PaperCellCounts) {
    const auto g4 = build_layout(10, 4);
    EXPECT_EQ(g4.rows, 12);
    EXPECT_EQ(g4.cols, 12);
    EXPECT_EQ(g4.cell_count(), 144u);
    EXPECT_EQ(build_layout(10, 6).cell_count(), 169u);
    const auto g22 = build_layout(10, 22);
    EXPECT_EQ(g22.rows, 21);
    EXPECT_EQ(g22.cell_count(), 441u);
}

TEST(Layout, SmallestLayout) {
    const auto g = build_layout(4, 2);
    EXPECT_EQ(g.cell_count(), 25u);
    EXPECT_TRUE(g.bus_row.front());
    EXPECT_TRUE(g.bus_col.front());
    EXPECT_FALSE(g.bus_row.back());
}

TEST(Layout, RejectsRoutingCountOutOfRange) {
    EXPECT_THROW(build_layout(10, 1), InvalidRoutingCount);
    EXPECT_THROW(build_layout(10, 23), InvalidRoutingCount);
    EXPECT_THROW(build_layout(2, 7), InvalidRoutingCount);
    EXPECT_NO_THROW(build_layout(2, 6));
}

TEST(Layout, FixedAllocationOrder) {
    const auto g3 = build_layout(10, 3);
    EXPECT_TRUE(g3.bus_row.front() && g3.bus_row.back() && g3.bus_col.front());
    EXPECT_FALSE(g3.bus_col.back());
    const auto g4 = build_layout(10, 4);
    EXPECT_TRUE(g4.bus_col.back());
    const auto g5 = build_layout(10, 5);
    EXPECT_EQ(g5.vertical_lines(), 3u);
    EXPECT_EQ(g5.horizontal_lines(), 2u);
}

TEST(LayoutProperty, StructureHoldsForAllCounts) {
    for (std::size_t L = 2; L <= 10; ++L) {
        std::size_t prev = 0;
        for (std::size_t r = 2; r <= max_routing_paths(L); ++r) {
            const auto g = build_layout(L, r);
            const std::size_t h = g.horizontal_lines(), v = g.vertical_lines();
            ASSERT_EQ(h + v, r);
            ASSERT_LE(h > v ? h - v : v - h, 1u);
            ASSERT_EQ(g.cell_count(), (L + h) * (L + v));
            ASSERT_EQ(g.data_slots.size(), L * L);
            ASSERT_GE(g.cell_count(), prev) << "L=" << L << " r=" << r;
            prev = g.cell_count();
            // Bus lines span the full grid; data slots are exactly the rest.
            std::set<std::pair<int, int>> slots;
            for (Cell c : g.data_slots) {
                ASSERT_EQ(g.kind(c), CellKind::DataSlot);
                slots.insert({c.row, c.col});
            }
            ASSERT_EQ(slots.size(), L * L);
            ASSERT_EQ(g.bus_cells(), g.cell_count() - L * L);
        }
    }
}

TEST(Layout, DataToAncillaRatio) {
    for (std::size_t r : {3u, 4u}) {
        const auto g = build_layout(10, r);
        const double ratio = 100.0 / static_cast<double>(g.cell_count() - 100);
        EXPECT_GE(ratio, 2.0) << "r=" << r;
        EXPECT_LE(ratio, 3.2) << "r=" << r;
    }
}

TEST(Layout, FactoryPorts) {
    const auto g1 = place_factories(build_layout(10, 4), 1);
    ASSERT_EQ(g1.factory_ports.size(), 1u);
    EXPECT_EQ(g1.factory_ports[0].cell, (Cell{0, 6}));

    const auto g4 = place_factories(build_layout(10, 4), 4);
    ASSERT_EQ(g4.factory_ports.size(), 4u);
    for (int k = 1; k <= 4; ++k) {
        EXPECT_EQ(g4.factory_ports[k - 1].cell, (Cell{0, 12 * k / 5}));
        EXPECT_EQ(g4.factory_ports[k - 1].factory, static_cast<std::size_t>(k - 1));
    }
    EXPECT_THROW(place_factories(build_layout(10, 4), 0), InvalidArgument);
}

TEST(Layout, FactoryPortsSpillToOtherBoundaries) {
    const auto g = place_factories(build_layout(2, 4), 6);
    std::set<std::pair<int, int>> seen;
    for (const auto& p : g.factory_ports) {
        EXPECT_EQ(g.kind(p.cell), CellKind::Bus);
        EXPECT_TRUE(p.cell.row == 0 || p.cell.col == 0 || p.cell.row == g.rows - 1 || p.cell.col == g.cols - 1);
        seen.insert({p.cell.row, p.cell.col});
    }
    EXPECT_EQ(seen.size(), 6u);
    EXPECT_THROW(place_factories(build_layout(2, 2), 6), NoBoundaryBus);
}

TEST(Layout, TotalQubits) {
    const auto g = place_factories(build_layout(10, 4), 1);
    EXPECT_EQ(total_qubits(g, true), 155u);
    EXPECT_EQ(total_qubits(g, false), 144u);
    EXPECT_EQ(total_qubits(build_layout(4, 2), false), 25u);
}

TEST(Layout, AsciiAndJson) {
    const auto g = place_factories(build_layout(2, 2), 1);
    EXPECT_EQ(render_ascii(g), ".F.\n.DD\n.DD\n");
    const auto j = to_json(g);
    EXPECT_EQ(j.at("rows"), 3);
    EXPECT_EQ(j.at("r"), 2);
    EXPECT_EQ(j.at("factory_ports").size(), 1u);
}

TEST(Mapping, Grid2DRowMajor) {
    const auto g = build_layout(2, 2);
    const Circuit c = generate({2, Model::Ising2D});
    const auto occ = initial_mapping(c, g, MappingMode::Grid2D);
    for (std::size_t q = 0; q < 4; ++q) EXPECT_EQ(occ.position(q), g.data_slots[q]);
    EXPECT_TRUE(occ.consistent());
}

TEST(Mapping, Snake1DBoustrophedon) {
    const auto g = build_layout(2, 2);
    Circuit chain{"chain", 4, {}};
    const auto occ = initial_mapping(chain, g, MappingMode::Snake1D);
    // data coordinates (0,0),(0,1),(1,1),(1,0)
    EXPECT_EQ(occ.position(0), g.data_slots[0]);
    EXPECT_EQ(occ.position(1), g.data_slots[1]);
    EXPECT_EQ(occ.position(2), g.data_slots[3]);
    EXPECT_EQ(occ.position(3), g.data_slots[2]);
}

TEST(Mapping, TooManyQubits) {
    Circuit big{"big", 5, {}};
    EXPECT_THROW(initial_mapping(big, build_layout(2, 2)), TooManyQubits);
}

TEST(Mapping, Grid2DPreservesLatticeAdjacency) {
    const auto g = build_layout(10, 4);
    for (Model m : {Model::Ising2D, Model::Heisenberg2D, Model::FermiHubbard2D}) {
        const Circuit c = generate({10, m});
        const auto occ = initial_mapping(c, g);
        auto slot_rank = [&](Cell cell) {
            for (std::size_t i = 0; i < g.data_slots.size(); ++i) {
                if (g.data_slots[i] == cell) return i;
            }
            return g.data_slots.size();
        };
        for (const Gate& gate : c.gates) {
            if (!gate.is_two_qubit()) continue;
            const std::size_t a = slot_rank(occ.position(gate.operands[0]));
            const std::size_t b = slot_rank(occ.position(gate.operands[1]));
            const long dr = std::labs(static_cast<long>(a / 10) - static_cast<long>(b / 10));
            const long dc = std::labs(static_cast<long>(a % 10) - static_cast<long>(b % 10));
            ASSERT_EQ(dr + dc, 1);
        }
    }
}

TEST(Occupancy, PlaceMoveRemove) {
    OccupancyState occ(3, 3, 2);
    occ.place({0, 0}, Occupant::data(0));
    occ.place({1, 1}, Occupant::magic(7));
    EXPECT_THROW(occ.place({0, 0}, Occupant::data(1)), InvalidArgument);
    EXPECT_THROW(occ.place({2, 2}, Occupant::data(0)), InvalidArgument);
    occ.move({0, 0}, {0, 1});
    EXPECT_EQ(occ.position(0), (Cell{0, 1}));
    EXPECT_THROW(occ.move({0, 1}, {1, 1}), InvalidArgument);
    EXPECT_EQ(occ.remove({1, 1}), Occupant::magic(7));
    EXPECT_TRUE(occ.consistent());
    EXPECT_EQ(occ.empty_cells().size(), 8u);
}
