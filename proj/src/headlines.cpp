#include "sentibt/headlines.hpp"

#include "sentibt/errors.hpp"

namespace sentibt {

const std::array<Topic, kTopicCount>& topic_universe() {
    static const std::array<Topic, kTopicCount> universe = {
        Topic::price_movement,   Topic::environmental,  Topic::market_analysis,
        Topic::production_output, Topic::macroeconomic, Topic::inventory_stocks,
        Topic::demand_outlook,   Topic::supply_disruption, Topic::company_news,
        Topic::trade_policy,     Topic::geopolitical,   Topic::other,
    };
    return universe;
}

std::string_view topic_name(Topic t) {
    switch (t) {
        case Topic::price_movement: return "price_movement";
        case Topic::environmental: return "environmental";
        case Topic::market_analysis: return "market_analysis";
        case Topic::production_output: return "production_output";
        case Topic::macroeconomic: return "macroeconomic";
        case Topic::inventory_stocks: return "inventory_stocks";
        case Topic::demand_outlook: return "demand_outlook";
        case Topic::supply_disruption: return "supply_disruption";
        case Topic::company_news: return "company_news";
        case Topic::trade_policy: return "trade_policy";
        case Topic::geopolitical: return "geopolitical";
        case Topic::other: return "other";
        case Topic::unlabeled: return "unlabeled";
    }
    return "unlabeled";
}

std::string_view sentiment_name(SentimentLabel s) {
    switch (s) {
        case SentimentLabel::positive: return "positive";
        case SentimentLabel::neutral: return "neutral";
        case SentimentLabel::negative: return "negative";
    }
    return "neutral";
}

std::string_view event_type_name(EventType e) {
    switch (e) {
        case EventType::forward_looking: return "forward_looking";
        case EventType::occurred: return "occurred";
        case EventType::unlabeled: return "unlabeled";
    }
    return "unlabeled";
}

SentimentLabel parse_sentiment(std::string_view s) {
    if (s == "positive") return SentimentLabel::positive;
    if (s == "neutral") return SentimentLabel::neutral;
    if (s == "negative") return SentimentLabel::negative;
    throw DataError("unknown sentiment label '" + std::string(s) +
                    "' (expected positive|neutral|negative)");
}

Topic parse_topic(std::string_view s) {
    if (s.empty()) return Topic::unlabeled;
    for (Topic t : topic_universe()) {
        if (s == topic_name(t)) return t;
    }
    throw DataError("unknown topic '" + std::string(s) + "'");
}

EventType parse_event_type(std::string_view s) {
    if (s.empty()) return EventType::unlabeled;
    if (s == "forward_looking") return EventType::forward_looking;
    if (s == "occurred") return EventType::occurred;
    throw DataError("unknown event_type '" + std::string(s) +
                    "' (expected forward_looking|occurred)");
}

}  // namespace sentibt
