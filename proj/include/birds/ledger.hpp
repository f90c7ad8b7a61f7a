#pragma once

// Permissioned single-writer chain: identified, timestamped, Merkle-rooted,
// hash-chained blocks carrying variable-size transaction lists, plus the
// UAV identity registry that lives on it.
//
// Canonical encodings (little-endian, SHA-256):
//   transaction = u32 body_len | u8 kind | u64 tx_id | kind fields
//   header      = u64 block_id | prev_hash[32] | merkle_root[32] | i64 timestamp
//                 | u32 difficulty | u32 tx_count | u32 proposer | u64 nonce

#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "birds/airframe.hpp"
#include "birds/digest.hpp"

namespace birds {

enum class TxKind : std::uint8_t {
    Genesis = 0,
    Registration = 1,
    DeliveryRecord = 2,
    ReputationUpdate = 3,
    Heartbeat = 4,
};

const char* to_string(TxKind kind);

struct GenesisMarker {
    std::string label = "genesis";
    friend bool operator==(const GenesisMarker&, const GenesisMarker&) = default;
};

struct Registration {
    UavSpec spec;
    friend bool operator==(const Registration&, const Registration&) = default;
};

struct DeliveryRecord {
    JobId job_id = 0;
    UavId uav_id = 0;
    double edt_s = 0.0;
    double adt_s = 0.0;
    double cost = 0.0;
    friend bool operator==(const DeliveryRecord&, const DeliveryRecord&) = default;
};

struct ReputationUpdate {
    UavId uav_id = 0;
    double score = 0.0;
    friend bool operator==(const ReputationUpdate&, const ReputationUpdate&) = default;
};

struct Heartbeat {
    UavId uav_id = 0;
    std::int64_t timestamp = 0;
    friend bool operator==(const Heartbeat&, const Heartbeat&) = default;
};

using TxPayload = std::variant<GenesisMarker, Registration, DeliveryRecord, ReputationUpdate, Heartbeat>;

struct Transaction {
    std::uint64_t tx_id = 0;
    TxPayload payload;

    TxKind kind() const { return static_cast<TxKind>(payload.index()); }
    std::vector<std::uint8_t> serialize() const;
    std::size_t byte_size() const { return serialize().size(); }

    static Transaction deserialize(std::span<const std::uint8_t> bytes);

    friend bool operator==(const Transaction&, const Transaction&) = default;
};

struct BlockHeader {
    std::uint64_t block_id = 0;
    Digest prev_hash{};
    Digest merkle_root{};
    std::int64_t timestamp = 0;
    std::uint32_t difficulty = 0;
    std::uint32_t tx_count = 0;
    UavId proposer = 0;
    std::uint64_t nonce = 0;

    std::vector<std::uint8_t> serialize() const;
    Digest hash() const { return sha256(serialize()); }

    static BlockHeader deserialize(std::span<const std::uint8_t> bytes);

    friend bool operator==(const BlockHeader&, const BlockHeader&) = default;
};

struct Block {
    BlockHeader header;
    std::vector<Transaction> transactions;
};

/// Leaves are H(tx), internal nodes H(left || right), odd levels repeat
/// their last node. Throws EmptyBlock on an empty list.
Digest merkle_root(std::span<const Transaction> transactions);

bool meets_difficulty(const Digest& header_hash, std::uint32_t difficulty);

/// Searches nonces upward from `start` until the header satisfies its own
/// difficulty; returns the winning nonce.
std::uint64_t find_nonce(BlockHeader header, std::uint64_t start = 0);

struct ValidationReport {
    bool ok = true;
    std::size_t block_index = 0;
    std::string reason;

    explicit operator bool() const { return ok; }
};

class Chain {
public:
    Chain();

    /// Adopts blocks as-is (no validation); use validate_chain afterwards.
    static Chain from_blocks(std::vector<Block> blocks);

    const std::vector<Block>& blocks() const { return blocks_; }
    const Block& tip() const { return blocks_.back(); }
    std::size_t size() const { return blocks_.size(); }
    const Digest& head_hash() const { return head_hash_; }

    /// Header for the next block, nonce zero; used to mine before appending.
    BlockHeader next_header(std::span<const Transaction> txs, UavId proposer,
                            std::int64_t timestamp, std::uint32_t difficulty) const;

    const Block& append(std::vector<Transaction> txs, UavId proposer, std::int64_t timestamp,
                        std::uint32_t difficulty, std::uint64_t nonce);

    std::optional<UavSpec> lookup_identity(UavId node_id) const;
    bool is_registered(UavId node_id) const { return identities_.contains(node_id); }

private:
    void index_block(std::size_t block_index);

    std::vector<Block> blocks_;
    Digest head_hash_{};
    std::unordered_map<UavId, std::pair<std::size_t, std::size_t>> identities_;
};

Block make_genesis_block();

ValidationReport validate_chain(std::span<const Block> blocks, const Digest* expected_head = nullptr);
ValidationReport validate_chain(const Chain& chain);

/// Builds a Registration transaction; rejects duplicates and incomplete specs.
Transaction register_uav(const Chain& chain, const UavSpec& spec, std::uint64_t tx_id);

std::optional<UavSpec> lookup_identity(const Chain& chain, UavId node_id);

/// One JSON document: array of blocks, header fields in encoding order,
/// digests as lowercase hex.
std::string export_chain_json(const Chain& chain);

}  // namespace birds
