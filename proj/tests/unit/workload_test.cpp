#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "gbpq/synthetic.hpp"
#include "gbpq/workload.hpp"
#include "support/oracles.hpp"

using namespace gbpq;

namespace {

const RoadGraph &network() {
    static const RoadGraph g = [] {
        SyntheticSpec s;
        s.nodes = 2500;
        s.seed = 3;
        return synthetic_road_network(s);
    }();
    return g;
}

std::string serialize(const QuerySet &qs) {
    std::ostringstream out;
    save_queries(qs, out);
    return out.str();
}

}  // namespace

TEST(WorkloadSpec, Validation) {
    WorkloadSpec s;
    EXPECT_NO_THROW(s.validate());
    EXPECT_DOUBLE_EQ(s.min_query_distance(), 400.0);
    s.dc = 0;
    EXPECT_THROW(s.validate(), std::invalid_argument);
    s.dc = 1.5;
    EXPECT_THROW(s.validate(), std::invalid_argument);
    s = {};
    s.omega = -1;
    EXPECT_THROW(s.validate(), std::invalid_argument);
    s = {};
    s.n = 0;
    EXPECT_THROW(s.validate(), std::invalid_argument);
    EXPECT_EQ(parse_distribution("zipf"), Distribution::zipf);
    EXPECT_THROW(parse_distribution("poisson"), std::invalid_argument);
}

TEST(GenerateWorkload, MinimumDistanceHoldsForEveryQuery) {
    for (const auto dist : {Distribution::gaussian, Distribution::zipf}) {
        for (const double omega : {50.0, 100.0, 400.0}) {
            WorkloadSpec s;
            s.n = 2000;
            s.omega = omega;
            s.distribution = dist;
            s.seed = 7;
            const auto qs = generate_workload(network(), s);
            ASSERT_EQ(qs.size(), s.n);
            const double min_d = s.min_query_distance();
            for (std::size_t i = 0; i < qs.size(); ++i) {
                const auto &pts = qs.points[i];
                const double d = euclidean(qs.frame.to_normalized(pts.source), qs.frame.to_normalized(pts.dest));
                ASSERT_GE(d, min_d - 1e-6);
                ASSERT_TRUE(network().valid(qs.queries[i].source));
                EXPECT_EQ(qs.queries[i].source, oracle::linear_scan_snap(network(), pts.source));
                EXPECT_EQ(qs.queries[i].dest, oracle::linear_scan_snap(network(), pts.dest));
            }
        }
    }
}

TEST(GenerateWorkload, GroupsShareWindows) {
    WorkloadSpec s;
    s.n = 500;
    const auto qs = generate_workload(network(), s);
    for (std::size_t g = 0; g < s.n / s.queries_per_group; ++g) {
        std::vector<Point2D> src, dst;
        for (std::size_t k = 0; k < s.queries_per_group; ++k) {
            const auto &p = qs.points[g * s.queries_per_group + k];
            src.push_back(qs.frame.to_normalized(p.source));
            dst.push_back(qs.frame.to_normalized(p.dest));
        }
        const auto sb = oracle::bounding_box(src), db = oracle::bounding_box(dst);
        EXPECT_LE(sb.max_x - sb.min_x, s.omega + 1e-6);
        EXPECT_LE(sb.max_y - sb.min_y, s.omega + 1e-6);
        EXPECT_LE(db.max_x - db.min_x, s.omega + 1e-6);
        // Window-aligned: every point of a group lies in one grid window.
        EXPECT_EQ(std::floor(sb.min_x / s.omega), std::floor(std::nextafter(sb.max_x, 0.0) / s.omega));
    }
}

TEST(GenerateWorkload, SingleQueryWithSmallCoefficient) {
    WorkloadSpec s;
    s.n = 1;
    s.dc = 1e-6;
    const auto qs = generate_workload(network(), s);
    ASSERT_EQ(qs.size(), 1u);
    EXPECT_GE(euclidean(qs.frame.to_normalized(qs.points[0].source), qs.frame.to_normalized(qs.points[0].dest)),
              s.min_query_distance());
}

TEST(GenerateWorkload, OneWindowWhenOmegaCoversSpace) {
    for (const auto dist : {Distribution::gaussian, Distribution::zipf}) {
        WorkloadSpec s;
        s.n = 300;
        s.omega = 10000;
        s.dc = 0.2;
        s.distribution = dist;
        const auto qs = generate_workload(network(), s);
        ASSERT_EQ(qs.size(), 300u);
        for (const auto &p : qs.points) {
            for (const auto q : {qs.frame.to_normalized(p.source), qs.frame.to_normalized(p.dest)}) {
                EXPECT_GE(q.x, -1e-6);
                EXPECT_LE(q.x, 10000 + 1e-6);
                EXPECT_GE(q.y, -1e-6);
                EXPECT_LE(q.y, 10000 + 1e-6);
            }
            EXPECT_GE(euclidean(qs.frame.to_normalized(p.source), qs.frame.to_normalized(p.dest)), 2000 - 1e-6);
        }
    }
}

TEST(GenerateWorkload, UnsatisfiableDistanceThrows) {
    WorkloadSpec s;
    s.omega = 10000;
    s.dc = 1.0;  // minimum 10000 inside a single 10000-wide window
    s.n = 5;
    EXPECT_THROW(generate_workload(network(), s), WorkloadError);
}

TEST(GenerateWorkload, SameSeedSameBytes) {
    WorkloadSpec s;
    s.n = 10000;
    s.seed = 42;
    const auto a = serialize(generate_workload(network(), s));
    const auto b = serialize(generate_workload(network(), s));
    EXPECT_EQ(a, b);
    s.seed = 43;
    EXPECT_NE(serialize(generate_workload(network(), s)), a);
}

TEST(GenerateWorkload, GaussianMeanNearWindowCentre) {
    WorkloadSpec s;
    s.n = 10000;
    s.queries_per_group = 10000;
    s.omega = 300;
    s.seed = 5;
    const auto qs = generate_workload(network(), s);
    double sx = 0, sy = 0;
    for (const auto &p : qs.points) {
        const auto u = qs.frame.to_normalized(p.source);
        sx += u.x;
        sy += u.y;
    }
    const double n = static_cast<double>(qs.size());
    const Point2D mean{sx / n, sy / n};
    const Point2D first = qs.frame.to_normalized(qs.points[0].source);
    const Point2D centre{(std::floor(first.x / s.omega) + 0.5) * s.omega, (std::floor(first.y / s.omega) + 0.5) * s.omega};
    // sigma of the truncated normal is below omega / 6; 3 sigma of the mean.
    const double bound = 3.0 * (s.omega / 6.0) / std::sqrt(n);
    EXPECT_NEAR(mean.x, centre.x, bound);
    EXPECT_NEAR(mean.y, centre.y, bound);
}

TEST(GenerateWorkload, ZipfIsSkewed) {
    WorkloadSpec s;
    s.n = 5000;
    s.queries_per_group = 5000;
    s.distribution = Distribution::zipf;
    const auto qs = generate_workload(network(), s);
    std::map<std::pair<int, int>, int> cells;
    for (const auto &p : qs.points) {
        const auto u = qs.frame.to_normalized(p.source);
        ++cells[{static_cast<int>(std::floor(u.x / 10)), static_cast<int>(std::floor(u.y / 10))}];
    }
    int top = 0;
    for (const auto &[k, c] : cells) top = std::max(top, c);
    // The top-ranked of 100 cells takes 1 / H(100), about 19%.
    EXPECT_GT(top, 800);
    EXPECT_LT(top, 1150);
}

TEST(QueryFile, EmptySetIsHeaderOnly) {
    QuerySet qs;
    const auto text = serialize(qs);
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) EXPECT_EQ(line.front(), '#');
    std::istringstream again(text);
    EXPECT_EQ(load_queries(again).size(), 0u);
}

TEST(QueryFile, RoundTripIsLossless) {
    WorkloadSpec s;
    s.n = 10000;
    s.distribution = Distribution::zipf;
    s.dc = 0.3;
    s.seed = 11;
    const auto qs = generate_workload(network(), s);
    std::istringstream in(serialize(qs));
    const auto back = load_queries(in);
    ASSERT_EQ(back.size(), qs.size());
    EXPECT_EQ(back.queries, qs.queries);
    EXPECT_EQ(back.points, qs.points);
    EXPECT_EQ(back.spec.n, s.n);
    EXPECT_EQ(back.spec.seed, s.seed);
    EXPECT_EQ(back.spec.dc, s.dc);
    EXPECT_EQ(back.spec.distribution, s.distribution);
    EXPECT_EQ(back.frame.scale, qs.frame.scale);
    EXPECT_EQ(back.frame.origin, qs.frame.origin);
    EXPECT_EQ(serialize(back), serialize(qs));
}

TEST(QueryFile, HandWrittenFixture) {
    const std::string path = std::string(GBPQ_TEST_DATA_DIR) + "/two_queries.txt";
    const auto qs = load_queries(path);
    ASSERT_EQ(qs.size(), 2u);
    EXPECT_EQ(qs.queries[0], (PathQuery{0, 3}));
    EXPECT_EQ(qs.queries[1], (PathQuery{2, 1}));
    EXPECT_EQ(qs.points[0], (QLine{{0.5, 0.25}, {30, 0}}));
    EXPECT_EQ(qs.points[1], (QLine{{20, 1}, {10.125, -2}}));
    EXPECT_EQ(qs.spec.n, 2u);
    EXPECT_EQ(qs.spec.omega, 50.0);
    EXPECT_EQ(qs.spec.distribution, Distribution::zipf);
    EXPECT_EQ(qs.spec.seed, 9u);
}

TEST(QueryFile, MalformedLineReportsLineNumber) {
    std::istringstream in("# gbpq-queries v1\nq 1 2 0 0 1 1\nq 1 x 0 0 1 1\n");
    try {
        load_queries(in);
        FAIL() << "expected ParseError";
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line(), 3u);
    }
    std::istringstream short_line("q 1 2 0 0 1\n");
    EXPECT_THROW(load_queries(short_line), ParseError);
}
