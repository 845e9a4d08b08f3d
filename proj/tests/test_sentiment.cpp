#include <doctest.h>

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "sentibt/sentiment.hpp"

using namespace sentibt;
using namespace sentibt::testing;

TEST_CASE("label scores") {
    CHECK(label_to_score(SentimentLabel::positive) == 1);
    CHECK(label_to_score(SentimentLabel::neutral) == 0);
    CHECK(label_to_score(SentimentLabel::negative) == -1);
}

TEST_CASE("monthly score of 6 positive, 2 neutral, 2 negative is 0.4") {
    std::vector<HeadlineRecord> hs;
    MonthKey m(2021, 5);
    add_headlines(hs, m, 6, SentimentLabel::positive);
    add_headlines(hs, m, 2, SentimentLabel::neutral);
    add_headlines(hs, m, 2, SentimentLabel::negative);
    MonthlySeries s = monthly_score(hs, {});
    REQUIRE(s.size() == 1);
    CHECK(*s.at(m) == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("an all-negative month scores the floor value -1") {
    std::vector<HeadlineRecord> hs;
    MonthKey m(2020, 2);
    add_headlines(hs, m, 7, SentimentLabel::negative);
    MonthlySeries s = monthly_score(hs, {});
    CHECK(*s.at(m) == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("a 5/3/3 month scores 2/11") {
    std::vector<HeadlineRecord> hs;
    MonthKey m(2021, 12);
    add_headlines(hs, m, 5, SentimentLabel::positive);
    add_headlines(hs, m, 3, SentimentLabel::neutral);
    add_headlines(hs, m, 3, SentimentLabel::negative);
    MonthlySeries s = monthly_score(hs, {});
    CHECK(*s.at(m) == doctest::Approx(0.1818).epsilon(0.03));
    CHECK(*s.at(m) == doctest::Approx(2.0 / 11.0).epsilon(1e-12));
}

TEST_CASE("a 1/1/7 month scores -2/3") {
    std::vector<HeadlineRecord> hs;
    MonthKey m(2022, 4);
    add_headlines(hs, m, 1, SentimentLabel::positive);
    add_headlines(hs, m, 1, SentimentLabel::neutral);
    add_headlines(hs, m, 7, SentimentLabel::negative);
    MonthlySeries s = monthly_score(hs, {});
    CHECK(*s.at(m) == doctest::Approx(-2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("months with no matching headlines are absent, not zero") {
    std::vector<HeadlineRecord> hs;
    add_headlines(hs, MonthKey(2021, 1), 3, SentimentLabel::positive);
    add_headlines(hs, MonthKey(2021, 3), 2, SentimentLabel::negative);
    MonthlySeries s = monthly_score(hs, {});
    CHECK(s.size() == 2);
    CHECK_FALSE(s.has(MonthKey(2021, 2)));
    MonthlySeries filled = fill_empty_months(s, MonthKey(2021, 1), MonthKey(2021, 3));
    CHECK(filled.size() == 3);
    CHECK(*filled.at(MonthKey(2021, 2)) == doctest::Approx(0.0));
}

TEST_CASE("scores stay within [-1, 1] on random corpora") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> label(0, 2);
    std::uniform_int_distribution<int> month(1, 12);
    std::uniform_int_distribution<int> day(1, 28);
    std::vector<HeadlineRecord> hs;
    for (int i = 0; i < 500; ++i) {
        hs.push_back(make_headline(Date{2021, month(rng), day(rng)},
                                   static_cast<SentimentLabel>(label(rng))));
    }
    for (double v : monthly_score(hs, {}).values()) {
        CHECK(v >= -1.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("monthly score is permutation-invariant") {
    std::mt19937 rng(7);
    std::vector<HeadlineRecord> hs;
    MonthKey m(2021, 8);
    add_headlines(hs, m, 4, SentimentLabel::positive);
    add_headlines(hs, m, 5, SentimentLabel::negative);
    add_headlines(hs, m, 2, SentimentLabel::neutral);
    MonthlySeries before = monthly_score(hs, {});
    std::shuffle(hs.begin(), hs.end(), rng);
    MonthlySeries after = monthly_score(hs, {});
    CHECK(before.entries() == after.entries());
}

TEST_CASE("swapping positive and negative labels negates every score") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> label(0, 2);
    std::uniform_int_distribution<int> month(1, 12);
    std::vector<HeadlineRecord> hs;
    for (int i = 0; i < 300; ++i) {
        hs.push_back(make_headline(Date{2021, month(rng), 10},
                                   static_cast<SentimentLabel>(label(rng))));
    }
    MonthlySeries base = monthly_score(hs, {});
    for (auto& h : hs) {
        if (h.sentiment == SentimentLabel::positive) h.sentiment = SentimentLabel::negative;
        else if (h.sentiment == SentimentLabel::negative) h.sentiment = SentimentLabel::positive;
    }
    MonthlySeries swapped = monthly_score(hs, {});
    REQUIRE(base.size() == swapped.size());
    for (const auto& [m, v] : base.entries()) {
        CHECK(*swapped.at(m) == doctest::Approx(-v).epsilon(1e-12));
    }
}

TEST_CASE("empty filter is identity") {
    std::vector<HeadlineRecord> hs;
    add_headlines(hs, MonthKey(2021, 1), 5, SentimentLabel::positive, Topic::price_movement);
    add_headlines(hs, MonthKey(2021, 1), 5, SentimentLabel::negative);
    CHECK(filter_headlines(hs, {}).size() == hs.size());
}

TEST_CASE("topic filter keeps only matching rows and drops unlabeled") {
    std::vector<HeadlineRecord> hs;
    add_headlines(hs, MonthKey(2021, 1), 4, SentimentLabel::positive, Topic::price_movement);
    add_headlines(hs, MonthKey(2021, 1), 3, SentimentLabel::negative, Topic::trade_policy);
    add_headlines(hs, MonthKey(2021, 1), 3, SentimentLabel::neutral);  // unlabeled
    HeadlineFilter f;
    f.topics = {Topic::price_movement};
    auto out = filter_headlines(hs, f);
    CHECK(out.size() == 4);
    for (const auto& h : out) CHECK(h.topic == Topic::price_movement);
}

TEST_CASE("event filter excludes other classes and unlabeled rows") {
    std::vector<HeadlineRecord> hs;
    add_headlines(hs, MonthKey(2021, 1), 2, SentimentLabel::positive, Topic::other,
                  EventType::occurred);
    add_headlines(hs, MonthKey(2021, 1), 3, SentimentLabel::positive, Topic::other,
                  EventType::forward_looking);
    add_headlines(hs, MonthKey(2021, 1), 4, SentimentLabel::positive, Topic::other);
    HeadlineFilter f;
    f.event_types = {EventType::occurred};
    CHECK(filter_headlines(hs, f).size() == 2);
}

TEST_CASE("source filter composes with topic filter") {
    std::vector<HeadlineRecord> hs;
    add_headlines(hs, MonthKey(2021, 1), 2, SentimentLabel::positive, Topic::other,
                  EventType::unlabeled, "reuters");
    add_headlines(hs, MonthKey(2021, 1), 3, SentimentLabel::positive, Topic::other,
                  EventType::unlabeled, "dowjones");
    add_headlines(hs, MonthKey(2021, 1), 5, SentimentLabel::positive, Topic::geopolitical,
                  EventType::unlabeled, "reuters");
    HeadlineFilter f;
    f.sources = {"reuters"};
    f.topics = {Topic::other};
    CHECK(filter_headlines(hs, f).size() == 2);
}
