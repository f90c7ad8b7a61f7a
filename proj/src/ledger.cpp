#include "birds/ledger.hpp"

#include <unordered_set>

#include "json.hpp"

namespace birds {

const char* to_string(TxKind kind) {
    switch (kind) {
    case TxKind::Genesis: return "genesis";
    case TxKind::Registration: return "registration";
    case TxKind::DeliveryRecord: return "delivery_record";
    case TxKind::ReputationUpdate: return "reputation_update";
    case TxKind::Heartbeat: return "heartbeat";
    }
    return "unknown";
}

namespace {

struct PayloadWriter {
    ByteWriter& w;

    void operator()(const GenesisMarker& g) const { w.str(g.label); }
    void operator()(const Registration& r) const {
        w.u32(r.spec.node_id);
        w.u8(static_cast<std::uint8_t>(r.spec.size_class));
        w.f64(r.spec.empty_weight_kg);
        w.f64(r.spec.payload_capacity_kg);
        w.f64(r.spec.battery_capacity_j);
        w.f64(r.spec.rated_flight_duration_s);
        w.f64(r.spec.rated_travel_distance_m);
    }
    void operator()(const DeliveryRecord& d) const {
        w.u64(d.job_id);
        w.u32(d.uav_id);
        w.f64(d.edt_s);
        w.f64(d.adt_s);
        w.f64(d.cost);
    }
    void operator()(const ReputationUpdate& r) const {
        w.u32(r.uav_id);
        w.f64(r.score);
    }
    void operator()(const Heartbeat& h) const {
        w.u32(h.uav_id);
        w.i64(h.timestamp);
    }
};

TxPayload read_payload(TxKind kind, ByteReader& r) {
    switch (kind) {
    case TxKind::Genesis: return GenesisMarker{r.str()};
    case TxKind::Registration: {
        Registration reg;
        reg.spec.node_id = r.u32();
        const std::uint8_t size = r.u8();
        if (size > static_cast<std::uint8_t>(SizeClass::Large)) {
            throw Error(ErrorKind::InvalidBlock, "unknown size class");
        }
        reg.spec.size_class = static_cast<SizeClass>(size);
        reg.spec.empty_weight_kg = r.f64();
        reg.spec.payload_capacity_kg = r.f64();
        reg.spec.battery_capacity_j = r.f64();
        reg.spec.rated_flight_duration_s = r.f64();
        reg.spec.rated_travel_distance_m = r.f64();
        return reg;
    }
    case TxKind::DeliveryRecord: {
        DeliveryRecord d;
        d.job_id = r.u64();
        d.uav_id = r.u32();
        d.edt_s = r.f64();
        d.adt_s = r.f64();
        d.cost = r.f64();
        return d;
    }
    case TxKind::ReputationUpdate: {
        ReputationUpdate u;
        u.uav_id = r.u32();
        u.score = r.f64();
        return u;
    }
    case TxKind::Heartbeat: {
        Heartbeat h;
        h.uav_id = r.u32();
        h.timestamp = r.i64();
        return h;
    }
    }
    throw Error(ErrorKind::InvalidBlock, "unknown transaction kind");
}

}  // namespace

std::vector<std::uint8_t> Transaction::serialize() const {
    ByteWriter body;
    body.u8(static_cast<std::uint8_t>(kind()));
    body.u64(tx_id);
    std::visit(PayloadWriter{body}, payload);

    ByteWriter out;
    out.bytes(body.buffer());
    return out.take();
}

Transaction Transaction::deserialize(std::span<const std::uint8_t> bytes) {
    ByteReader outer(bytes);
    const std::uint32_t len = outer.u32();
    if (outer.remaining() != len) {
        throw Error(ErrorKind::InvalidBlock, "transaction length prefix mismatch");
    }
    ByteReader r(bytes.subspan(4));
    const std::uint8_t kind = r.u8();
    if (kind > static_cast<std::uint8_t>(TxKind::Heartbeat)) {
        throw Error(ErrorKind::InvalidBlock, "unknown transaction kind");
    }
    Transaction tx;
    tx.tx_id = r.u64();
    tx.payload = read_payload(static_cast<TxKind>(kind), r);
    if (!r.done()) {
        throw Error(ErrorKind::InvalidBlock, "trailing bytes in transaction");
    }
    return tx;
}

std::vector<std::uint8_t> BlockHeader::serialize() const {
    ByteWriter w;
    w.u64(block_id);
    w.digest(prev_hash);
    w.digest(merkle_root);
    w.i64(timestamp);
    w.u32(difficulty);
    w.u32(tx_count);
    w.u32(proposer);
    w.u64(nonce);
    return w.take();
}

BlockHeader BlockHeader::deserialize(std::span<const std::uint8_t> bytes) {
    ByteReader r(bytes);
    BlockHeader h;
    h.block_id = r.u64();
    h.prev_hash = r.digest();
    h.merkle_root = r.digest();
    h.timestamp = r.i64();
    h.difficulty = r.u32();
    h.tx_count = r.u32();
    h.proposer = r.u32();
    h.nonce = r.u64();
    if (!r.done()) {
        throw Error(ErrorKind::InvalidBlock, "trailing bytes in header");
    }
    return h;
}

Digest merkle_root(std::span<const Transaction> transactions) {
    if (transactions.empty()) {
        throw Error(ErrorKind::EmptyBlock, "blocks must carry at least one transaction");
    }
    std::vector<Digest> level;
    level.reserve(transactions.size());
    for (const Transaction& tx : transactions) {
        level.push_back(sha256(tx.serialize()));
    }
    while (level.size() > 1) {
        if (level.size() % 2 == 1) {
            level.push_back(level.back());
        }
        std::vector<Digest> next;
        next.reserve(level.size() / 2);
        for (std::size_t i = 0; i < level.size(); i += 2) {
            next.push_back(sha256_pair(level[i], level[i + 1]));
        }
        level = std::move(next);
    }
    return level.front();
}

bool meets_difficulty(const Digest& header_hash, std::uint32_t difficulty) {
    return leading_zero_bits(header_hash) >= difficulty;
}

std::uint64_t find_nonce(BlockHeader header, std::uint64_t start) {
    if (header.difficulty > 64) {
        throw Error(ErrorKind::InvalidParameter, "difficulty too large to mine");
    }
    for (std::uint64_t nonce = start;; ++nonce) {
        header.nonce = nonce;
        if (meets_difficulty(header.hash(), header.difficulty)) {
            return nonce;
        }
    }
}

Block make_genesis_block() {
    Block g;
    g.transactions.push_back(Transaction{0, GenesisMarker{}});
    g.header.block_id = 0;
    g.header.prev_hash = Digest{};
    g.header.merkle_root = merkle_root(g.transactions);
    g.header.timestamp = 0;
    g.header.difficulty = 0;
    g.header.tx_count = 1;
    g.header.proposer = 0;
    g.header.nonce = 0;
    return g;
}

Chain::Chain() {
    blocks_.push_back(make_genesis_block());
    head_hash_ = blocks_.back().header.hash();
}

Chain Chain::from_blocks(std::vector<Block> blocks) {
    if (blocks.empty()) {
        throw Error(ErrorKind::InvalidBlock, "a chain needs at least a genesis block");
    }
    Chain c;
    c.blocks_ = std::move(blocks);
    c.identities_.clear();
    for (std::size_t i = 0; i < c.blocks_.size(); ++i) {
        c.index_block(i);
    }
    c.head_hash_ = c.blocks_.back().header.hash();
    return c;
}

void Chain::index_block(std::size_t block_index) {
    const auto& txs = blocks_[block_index].transactions;
    for (std::size_t t = 0; t < txs.size(); ++t) {
        if (const auto* reg = std::get_if<Registration>(&txs[t].payload)) {
            identities_[reg->spec.node_id] = {block_index, t};
        }
    }
}

BlockHeader Chain::next_header(std::span<const Transaction> txs, UavId proposer,
                               std::int64_t timestamp, std::uint32_t difficulty) const {
    BlockHeader h;
    h.block_id = tip().header.block_id + 1;
    h.prev_hash = head_hash_;
    h.merkle_root = merkle_root(txs);
    h.timestamp = timestamp;
    h.difficulty = difficulty;
    h.tx_count = static_cast<std::uint32_t>(txs.size());
    h.proposer = proposer;
    h.nonce = 0;
    return h;
}

const Block& Chain::append(std::vector<Transaction> txs, UavId proposer, std::int64_t timestamp,
                           std::uint32_t difficulty, std::uint64_t nonce) {
    if (timestamp < tip().header.timestamp) {
        throw Error(ErrorKind::StaleTimestamp, "block timestamp precedes the tip");
    }
    std::unordered_set<UavId> fresh;
    for (const Transaction& tx : txs) {
        if (const auto* reg = std::get_if<Registration>(&tx.payload)) {
            validate(reg->spec);
            if (is_registered(reg->spec.node_id) || !fresh.insert(reg->spec.node_id).second) {
                throw Error(ErrorKind::AlreadyRegistered,
                            "node " + std::to_string(reg->spec.node_id) + " is already registered");
            }
        }
    }
    BlockHeader header = next_header(txs, proposer, timestamp, difficulty);
    header.nonce = nonce;
    const Digest hash = header.hash();
    if (!meets_difficulty(hash, difficulty)) {
        throw Error(ErrorKind::InvalidNonce, "nonce does not satisfy the block difficulty");
    }
    blocks_.push_back(Block{header, std::move(txs)});
    head_hash_ = hash;
    index_block(blocks_.size() - 1);
    return blocks_.back();
}

std::optional<UavSpec> Chain::lookup_identity(UavId node_id) const {
    auto it = identities_.find(node_id);
    if (it == identities_.end()) {
        return std::nullopt;
    }
    const auto [b, t] = it->second;
    return std::get<Registration>(blocks_[b].transactions[t].payload).spec;
}

ValidationReport validate_chain(std::span<const Block> blocks, const Digest* expected_head) {
    auto fail = [](std::size_t i, std::string why) { return ValidationReport{false, i, std::move(why)}; };
    if (blocks.empty()) {
        return fail(0, "empty chain");
    }
    const Block genesis = make_genesis_block();
    if (!(blocks[0].header == genesis.header) || blocks[0].transactions != genesis.transactions) {
        return fail(0, "genesis block mismatch");
    }
    std::unordered_set<std::uint64_t> tx_ids;
    std::unordered_set<UavId> registered;
    Digest prev = blocks[0].header.hash();
    tx_ids.insert(blocks[0].transactions[0].tx_id);
    for (std::size_t i = 1; i < blocks.size(); ++i) {
        const BlockHeader& h = blocks[i].header;
        const BlockHeader& parent = blocks[i - 1].header;
        if (h.block_id != parent.block_id + 1) {
            return fail(i, "block_id not consecutive");
        }
        if (h.prev_hash != prev) {
            return fail(i, "prev_hash does not match parent header hash");
        }
        if (h.timestamp < parent.timestamp) {
            return fail(i, "timestamp precedes parent");
        }
        if (blocks[i].transactions.empty()) {
            return fail(i, "empty block");
        }
        if (h.tx_count != blocks[i].transactions.size()) {
            return fail(i, "tx_count mismatch");
        }
        if (h.merkle_root != merkle_root(blocks[i].transactions)) {
            return fail(i, "merkle root mismatch");
        }
        const Digest hash = h.hash();
        if (!meets_difficulty(hash, h.difficulty)) {
            return fail(i, "header does not meet its difficulty");
        }
        for (const Transaction& tx : blocks[i].transactions) {
            if (!tx_ids.insert(tx.tx_id).second) {
                return fail(i, "duplicate tx_id");
            }
            if (tx.kind() == TxKind::Genesis) {
                return fail(i, "genesis transaction outside genesis block");
            }
            if (const auto* reg = std::get_if<Registration>(&tx.payload)) {
                if (!registered.insert(reg->spec.node_id).second) {
                    return fail(i, "duplicate registration");
                }
            }
        }
        prev = hash;
    }
    if (expected_head != nullptr && prev != *expected_head) {
        return fail(blocks.size() - 1, "head hash mismatch");
    }
    return {};
}

ValidationReport validate_chain(const Chain& chain) {
    return validate_chain(chain.blocks(), &chain.head_hash());
}

Transaction register_uav(const Chain& chain, const UavSpec& spec, std::uint64_t tx_id) {
    validate(spec);
    if (chain.is_registered(spec.node_id)) {
        throw Error(ErrorKind::AlreadyRegistered,
                    "node " + std::to_string(spec.node_id) + " is already registered");
    }
    return Transaction{tx_id, Registration{spec}};
}

std::optional<UavSpec> lookup_identity(const Chain& chain, UavId node_id) {
    return chain.lookup_identity(node_id);
}

namespace {

nlohmann::ordered_json tx_json(const Transaction& tx) {
    nlohmann::ordered_json j;
    j["tx_id"] = tx.tx_id;
    j["kind"] = to_string(tx.kind());
    j["byte_size"] = tx.byte_size();
    std::visit(
        [&j](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, GenesisMarker>) {
                j["label"] = p.label;
            } else if constexpr (std::is_same_v<T, Registration>) {
                j["node_id"] = p.spec.node_id;
                j["size_class"] = to_string(p.spec.size_class);
                j["empty_weight"] = p.spec.empty_weight_kg;
                j["payload_capacity"] = p.spec.payload_capacity_kg;
                j["battery_capacity"] = p.spec.battery_capacity_j;
                j["rated_flight_duration"] = p.spec.rated_flight_duration_s;
                j["rated_travel_distance"] = p.spec.rated_travel_distance_m;
            } else if constexpr (std::is_same_v<T, DeliveryRecord>) {
                j["job_id"] = p.job_id;
                j["uav_id"] = p.uav_id;
                j["edt"] = p.edt_s;
                j["adt"] = p.adt_s;
                j["cost"] = p.cost;
            } else if constexpr (std::is_same_v<T, ReputationUpdate>) {
                j["uav_id"] = p.uav_id;
                j["score"] = p.score;
            } else {
                j["uav_id"] = p.uav_id;
                j["timestamp"] = p.timestamp;
            }
        },
        tx.payload);
    return j;
}

}  // namespace

std::string export_chain_json(const Chain& chain) {
    auto doc = nlohmann::ordered_json::array();
    for (const Block& b : chain.blocks()) {
        nlohmann::ordered_json jb;
        jb["block_id"] = b.header.block_id;
        jb["prev_hash"] = to_hex(b.header.prev_hash);
        jb["merkle_root"] = to_hex(b.header.merkle_root);
        jb["timestamp"] = b.header.timestamp;
        jb["difficulty"] = b.header.difficulty;
        jb["tx_count"] = b.header.tx_count;
        jb["proposer"] = b.header.proposer;
        jb["nonce"] = b.header.nonce;
        jb["hash"] = to_hex(b.header.hash());
        auto txs = nlohmann::ordered_json::array();
        for (const Transaction& tx : b.transactions) {
            txs.push_back(tx_json(tx));
        }
        jb["transactions"] = std::move(txs);
        doc.push_back(std::move(jb));
    }
    return doc.dump(2) + "\n";
}

}  // namespace birds
