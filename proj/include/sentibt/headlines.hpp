#pragma once

#include <array>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sentibt/calendar.hpp"

namespace sentibt {

enum class SentimentLabel { positive, neutral, negative };

enum class EventType { forward_looking, occurred, unlabeled };

/// Fixed topic universe. `unlabeled` marks rows without a topic tag and is
/// not part of the 12-topic universe.
enum class Topic {
    price_movement,
    environmental,
    market_analysis,
    production_output,
    macroeconomic,
    inventory_stocks,
    demand_outlook,
    supply_disruption,
    company_news,
    trade_policy,
    geopolitical,
    other,
    unlabeled,
};

inline constexpr int kTopicCount = 12;

const std::array<Topic, kTopicCount>& topic_universe();

std::string_view topic_name(Topic t);
std::string_view sentiment_name(SentimentLabel s);
std::string_view event_type_name(EventType e);

/// Parse enum values from CSV cells; throw DataError on unknown strings.
SentimentLabel parse_sentiment(std::string_view s);
Topic parse_topic(std::string_view s);          // empty -> unlabeled
EventType parse_event_type(std::string_view s);  // empty -> unlabeled

struct HeadlineRecord {
    Date date;
    std::string source;
    std::string text;
    SentimentLabel sentiment = SentimentLabel::neutral;
    Topic topic = Topic::unlabeled;
    EventType event_type = EventType::unlabeled;

    MonthKey month() const { return MonthKey::of(date); }
};

/// Empty sets pass everything. A non-empty topic (or event_type) set never
/// matches unlabeled rows.
struct HeadlineFilter {
    std::set<std::string> sources;
    std::set<Topic> topics;
    std::set<EventType> event_types;

    bool matches(const HeadlineRecord& h) const {
        if (!sources.empty() && sources.count(h.source) == 0) return false;
        if (!topics.empty() && (h.topic == Topic::unlabeled || topics.count(h.topic) == 0)) return false;
        if (!event_types.empty() &&
            (h.event_type == EventType::unlabeled || event_types.count(h.event_type) == 0))
            return false;
        return true;
    }
};

}  // namespace sentibt
