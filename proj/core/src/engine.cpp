#include "gossip/engine.hpp"

#include <algorithm>
#include <stdexcept>

namespace gossip {

BufferedEngine::BufferedEngine(const Graph& graph, const RunConfig& config)
    : graph_(&graph), config_(config), tape_(config.seed) {
    validate(graph, config);
    const std::size_t n = graph.node_count();
    states_.resize(n);
    informed_at_round_start_.assign(n, false);
    inbox_.resize(n);
    late_inbox_.resize(n);
    direct_slot_.resize(n);
    direct_valid_.assign(n, false);
    trace_.informed_round.assign(n, kNeverInformed);
    states_[config.source].informed = true;
    trace_.informed_round[config.source] = 0;
    informed_count_ = 1;
}

void BufferedEngine::step() {
    ++round_;
    const std::size_t n = graph_->node_count();
    for (NodeId v = 0; v < n; ++v) {
        NodeState& st = states_[v];
        st.reads_this_round = 0;
        st.sends_this_round = 0;
        informed_at_round_start_[v] = st.informed;
        inbox_[v].clear();
        late_inbox_[v].clear();
        // A Push execution never queues anything at an uninformed node: its
        // only traffic is the rumor, which informs on the direct read.
        if (config_.protocol == Protocol::Push && !st.informed && !st.buffer.empty()) {
            throw std::logic_error("push: uninformed node " + std::to_string(v) +
                                   " entered round " + std::to_string(round_) +
                                   " with a nonempty buffer");
        }
    }

    emit_phase();
    deliver_phase();
    read_phase();
    late_deliver_phase();
    record_round();
}

void BufferedEngine::emit_phase() {
    const std::size_t n = graph_->node_count();
    for (NodeId v = 0; v < n; ++v) {
        const bool informed = informed_at_round_start_[v];
        switch (config_.protocol) {
            case Protocol::Push:
                if (informed) {
                    send_contact(v, Message::Kind::Rumor);
                }
                break;
            case Protocol::Pull:
                // Nearly-informed nodes cannot detect their state, so they
                // request like any other uninformed node. Informed nodes keep
                // their send budget for same-round answers.
                if (!informed) {
                    send_contact(v, Message::Kind::PullRequest);
                }
                break;
            case Protocol::PushPull:
                if (!informed) {
                    send_contact(v, Message::Kind::PullRequest);
                }
                break;
        }
    }
}

void BufferedEngine::send_contact(NodeId from, Message::Kind kind) {
    const std::size_t deg = graph_->degree(from);
    const std::uint64_t port =
        tape_.uniform(from, round_, ChoiceTape::Purpose::ContactChoice, deg);
    const NodeId to = graph_->neighbor_at_port(from, static_cast<std::size_t>(port));
    Message msg{kind, from, round_, next_uid_++};
    inbox_[to].push_back(
        Arrival{msg, static_cast<std::uint32_t>(graph_->port_of(to, from))});
    NodeState& st = states_[from];
    if (++st.sends_this_round > 1) {
        throw std::logic_error("send budget exceeded at node " + std::to_string(from));
    }
    ++trace_.total_messages_sent;
}

void BufferedEngine::deliver_phase() {
    const std::size_t n = graph_->node_count();
    for (NodeId r = 0; r < n; ++r) {
        auto& arrivals = inbox_[r];
        if (arrivals.empty()) {
            continue;
        }
        // Canonical pre-order: ascending incoming port. Senders are distinct
        // within a round, so ports are too.
        std::sort(arrivals.begin(), arrivals.end(),
                  [](const Arrival& a, const Arrival& b) { return a.port < b.port; });
        if (states_[r].buffer.empty()) {
            const std::uint64_t pick =
                tape_.uniform(r, round_, ChoiceTape::Purpose::DirectPick, arrivals.size());
            direct_slot_[r] = arrivals[static_cast<std::size_t>(pick)].msg;
            direct_valid_[r] = true;
            arrivals.erase(arrivals.begin() + static_cast<std::ptrdiff_t>(pick));
        }
        append_arrivals(r, arrivals, ChoiceTape::Purpose::AppendShuffle);
    }
}

void BufferedEngine::append_arrivals(NodeId recipient, std::vector<Arrival>& arrivals,
                                     ChoiceTape::Purpose shuffle_purpose) {
    if (arrivals.empty()) {
        return;
    }
    if (config_.tie_break == TieBreak::UniformRandom && arrivals.size() > 1) {
        auto stream = tape_.stream(recipient, round_, shuffle_purpose);
        stream.shuffle(arrivals);
    }
    for (const Arrival& a : arrivals) {
        append_message(recipient, a.msg);
    }
}

void BufferedEngine::append_message(NodeId recipient, const Message& msg) {
    NodeState& st = states_[recipient];
    if (config_.buffer_capacity && st.buffer.size() >= *config_.buffer_capacity) {
        ++trace_.total_dropped;
        if (hooks_.on_drop) {
            hooks_.on_drop(recipient, msg);
        }
        return;
    }
    st.buffer.push_back(msg);
    if (msg.kind == Message::Kind::Rumor) {
        ++st.buffered_rumors;
    }
    ++buffered_total_;
    if (hooks_.on_append) {
        hooks_.on_append(recipient, msg);
    }
}

bool BufferedEngine::read_message(NodeId reader, const Message& msg, bool direct) {
    NodeState& st = states_[reader];
    if (++st.reads_this_round > 1) {
        throw std::logic_error("read budget exceeded at node " + std::to_string(reader));
    }
    ++trace_.total_reads;
    if (hooks_.on_read) {
        hooks_.on_read(reader, msg, direct);
    }
    if (msg.kind == Message::Kind::Rumor) {
        if (!st.informed) {
            st.informed = true;
            trace_.informed_round[reader] = round_;
            ++informed_count_;
        }
        // An informed reader discards the duplicate copy.
        return false;
    }
    // PullRequest: only an informed reader can answer; the answer goes out
    // within the same round. Requests read while uninformed are discarded.
    if (st.informed) {
        Message answer{Message::Kind::Rumor, reader, round_, next_uid_++};
        late_inbox_[msg.sender].push_back(Arrival{
            answer, static_cast<std::uint32_t>(graph_->port_of(msg.sender, reader))});
        if (++st.sends_this_round > 1) {
            throw std::logic_error("send budget exceeded at node " + std::to_string(reader));
        }
        ++trace_.total_messages_sent;
        return true;
    }
    return false;
}

void BufferedEngine::read_phase() {
    const std::size_t n = graph_->node_count();
    for (NodeId v = 0; v < n; ++v) {
        NodeState& st = states_[v];
        bool answered = false;
        if (direct_valid_[v]) {
            const Message msg = direct_slot_[v];
            direct_valid_[v] = false;
            answered = read_message(v, msg, true);
        } else if (!st.buffer.empty()) {
            const Message msg = st.buffer.front();
            st.buffer.pop_front();
            if (msg.kind == Message::Kind::Rumor) {
                --st.buffered_rumors;
            }
            --buffered_total_;
            answered = read_message(v, msg, false);
        }
        // Push&Pull: an informed node that is not answering a request this
        // round spends its send budget on a push instead.
        if (config_.protocol == Protocol::PushPull && informed_at_round_start_[v] && !answered) {
            const std::size_t deg = graph_->degree(v);
            const std::uint64_t port =
                tape_.uniform(v, round_, ChoiceTape::Purpose::ContactChoice, deg);
            const NodeId to = graph_->neighbor_at_port(v, static_cast<std::size_t>(port));
            Message push{Message::Kind::Rumor, v, round_, next_uid_++};
            late_inbox_[to].push_back(
                Arrival{push, static_cast<std::uint32_t>(graph_->port_of(to, v))});
            if (++st.sends_this_round > 1) {
                throw std::logic_error("send budget exceeded at node " + std::to_string(v));
            }
            ++trace_.total_messages_sent;
        }
    }
}

void BufferedEngine::late_deliver_phase() {
    const std::size_t n = graph_->node_count();
    for (NodeId r = 0; r < n; ++r) {
        auto& arrivals = late_inbox_[r];
        if (arrivals.empty()) {
            continue;
        }
        std::sort(arrivals.begin(), arrivals.end(),
                  [](const Arrival& a, const Arrival& b) { return a.port < b.port; });
        NodeState& st = states_[r];
        if (st.reads_this_round == 0 && st.buffer.empty()) {
            const std::uint64_t pick = tape_.uniform(
                r, round_, ChoiceTape::Purpose::LateDirectPick, arrivals.size());
            const Message msg = arrivals[static_cast<std::size_t>(pick)].msg;
            arrivals.erase(arrivals.begin() + static_cast<std::ptrdiff_t>(pick));
            read_message(r, msg, true);
        }
        append_arrivals(r, arrivals, ChoiceTape::Purpose::LateAppendShuffle);
    }
}

void BufferedEngine::record_round() {
    const std::size_t n = graph_->node_count();
    RoundRecord rec;
    rec.round = round_;
    rec.informed = static_cast<std::uint32_t>(informed_count_);
    std::uint32_t nearly = 0;
    std::uint32_t max_buffer = 0;
    for (NodeId v = 0; v < n; ++v) {
        const NodeState& st = states_[v];
        if (!st.informed && st.buffered_rumors > 0) {
            ++nearly;
        }
        max_buffer = std::max(max_buffer, static_cast<std::uint32_t>(st.buffer.size()));
        if (st.reads_this_round > 1 || st.sends_this_round > 1) {
            throw std::logic_error("round budget violated at node " + std::to_string(v));
        }
    }
    rec.nearly_informed = nearly;
    rec.buffered = buffered_total_;
    rec.max_buffer = max_buffer;
    trace_.rounds.push_back(rec);
}

Trace BufferedEngine::run() {
    while (!complete() && round_ < config_.max_rounds) {
        step();
    }
    if (complete()) {
        trace_.completion_round =
            *std::max_element(trace_.informed_round.begin(), trace_.informed_round.end());
    }
    trace_.final_buffered = buffered_total_;
    return trace_;
}

Trace run(const Graph& graph, const RunConfig& config) {
    BufferedEngine engine(graph, config);
    return engine.run();
}

}  // namespace gossip
