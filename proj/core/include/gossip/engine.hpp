#pragma once

#include "gossip/choice_tape.hpp"
#include "gossip/graph.hpp"
#include "gossip/protocol.hpp"
#include "gossip/trace.hpp"

#include <cstdint>
#include <deque>
#include <functional>
#include <vector>

namespace gossip {

struct Message {
    enum class Kind : std::uint8_t { Rumor, PullRequest };
    Kind kind = Kind::Rumor;
    NodeId sender = 0;
    std::uint32_t sent_round = 0;  // diagnostics only
    std::uint64_t uid = 0;         // per-run append-order id, for FIFO checks
};

struct NodeState {
    bool informed = false;
    std::deque<Message> buffer;
    std::uint32_t buffered_rumors = 0;  // rumor copies currently in the buffer
    std::uint8_t reads_this_round = 0;
    std::uint8_t sends_this_round = 0;
};

// Test hooks observing buffer traffic. All optional.
struct EngineHooks {
    std::function<void(NodeId, const Message&)> on_append;
    std::function<void(NodeId, const Message&, bool direct)> on_read;
    std::function<void(NodeId, const Message&)> on_drop;
};

// One synchronous round of the buffer model runs in four phases:
//
//   A (emit)    every node, judged by its start-of-round state, places at
//               most one outgoing call. Push: informed nodes send the rumor
//               to a uniformly random port. Pull: uninformed nodes (including
//               nearly-informed ones, which cannot tell) send a request to a
//               uniformly random port; informed nodes hold their send budget
//               for Phase C answers. Push&Pull: uninformed nodes request,
//               informed nodes act entirely in Phase C.
//   B (deliver) per recipient: with a nonempty buffer, every arrival is
//               appended in tie-break order; with an empty buffer, one
//               arrival chosen uniformly at random is read directly in Phase
//               C and the rest are appended.
//   C (read)    every node reads at most one message: the direct arrival if
//               one was marked, else the buffer head. Reading the rumor while
//               uninformed informs the node this round; while informed, the
//               copy is discarded. Reading a request while informed answers
//               it: the rumor is sent back within the same round. Reading a
//               request while uninformed discards it. A Push&Pull-informed
//               node that did not read a request pushes instead.
//   D (late)    Phase-C answers land. A recipient that has read nothing this
//               round and whose buffer is empty reads one of them directly
//               (uniformly random if several); the rest are appended in
//               tie-break order.
//
// A node informed in round t starts acting informed in round t+1.
class BufferedEngine {
public:
    BufferedEngine(const Graph& graph, const RunConfig& config);

    // Executes one round. Throws std::logic_error if a per-round budget
    // invariant breaks (one read, one send per node).
    void step();

    bool complete() const noexcept { return informed_count_ == graph_->node_count(); }
    std::uint32_t rounds_executed() const noexcept { return round_; }

    // Runs until completion or config.max_rounds and returns the trace.
    Trace run();

    // Inspection (tests).
    const NodeState& node(NodeId v) const { return states_.at(v); }
    std::size_t informed_count() const noexcept { return informed_count_; }
    const Trace& trace() const noexcept { return trace_; }

    void set_hooks(EngineHooks hooks) { hooks_ = std::move(hooks); }

private:
    struct Arrival {
        Message msg;
        std::uint32_t port = 0;  // incoming port at the recipient
    };

    void emit_phase();
    void deliver_phase();
    void read_phase();
    void late_deliver_phase();
    void append_arrivals(NodeId recipient, std::vector<Arrival>& arrivals,
                         ChoiceTape::Purpose shuffle_purpose);
    void append_message(NodeId recipient, const Message& msg);
    // Returns true if the read triggered a same-round answer.
    bool read_message(NodeId reader, const Message& msg, bool direct);
    void send_contact(NodeId from, Message::Kind kind);
    void record_round();

    const Graph* graph_;
    RunConfig config_;
    ChoiceTape tape_;
    std::vector<NodeState> states_;
    std::vector<bool> informed_at_round_start_;
    std::vector<std::vector<Arrival>> inbox_;       // Phase-A traffic, per recipient
    std::vector<std::vector<Arrival>> late_inbox_;  // Phase-C traffic, per recipient
    // Direct-read slot per node, valid when direct_valid_[v].
    std::vector<Message> direct_slot_;
    std::vector<bool> direct_valid_;
    std::size_t informed_count_ = 0;
    std::uint32_t round_ = 0;
    std::uint64_t next_uid_ = 1;
    std::uint64_t buffered_total_ = 0;
    Trace trace_;
    EngineHooks hooks_;
};

// Single buffered run; identical (graph, config) yields an identical trace.
Trace run(const Graph& graph, const RunConfig& config);

}  // namespace gossip
