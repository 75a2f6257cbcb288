// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "capsule/assets.hpp"
#include "capsule/errors.hpp"
#include "capsule/events.hpp"
#include "capsule/ids.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <vector>

namespace capsule {

// Accounting constants. Entity overhead covers slot bookkeeping per live
// entity; local-storage overhead is the cost of an empty per-player store.
inline constexpr std::uint64_t kEntityOverheadBytes = 32;
inline constexpr std::uint64_t kLocalStorageOverheadBytes = 4096;
inline constexpr std::uint64_t kSessionBookkeepingBytes = 64;

struct ComponentData {
    std::uint32_t kind = 0;
    std::vector<std::uint8_t> payload;
};

// One entity: its handle, ownership scope, components (sorted by kind),
// references to other entities, and the asset handles it holds.
struct EntityRecord {
    EntityId id;
    Scope scope;
    std::vector<ComponentData> components;
    std::vector<EntityId> references;
    std::vector<AssetId> assets;

    std::uint64_t content_bytes() const {
        std::uint64_t b = kEntityOverheadBytes;
        for (const auto& c : components) b += c.payload.size();
        return b;
    }
};

struct ReclaimReport {
    PlayerId player;
    std::uint64_t entities_despawned = 0;
    std::uint64_t events_discarded = 0;
    std::uint64_t ram_bytes_reclaimed = 0;
    std::uint64_t vram_bytes_reclaimed = 0;
};

// One storage layer: a slot table of entities plus an ordered event queue.
// There is exactly one global Store and one per player; each is identified by
// a partition key baked into the EntityIds it hands out.
class Store {
public:
    Store(std::uint32_t partition, std::uint64_t base_bytes)
        : partition_(partition), bytes_(base_bytes) {}

    std::uint32_t partition() const { return partition_; }

    EntityId insert(EntityRecord&& rec) {
        std::uint32_t slot;
        if (!free_.empty()) {
            slot = free_.back();
            free_.pop_back();
        } else {
            slot = std::uint32_t(slots_.size());
            slots_.emplace_back();
        }
        Slot& s = slots_[slot];
        if (s.generation == 0) s.generation = 1;
        s.live = true;
        s.rec = std::move(rec);
        s.rec.id = EntityId::make(partition_, slot, s.generation);
        bytes_ += s.rec.content_bytes();
        ++live_count_;
        return s.rec.id;
    }

    // Removes the entity and returns its record (assets still attached, for
    // the caller to release). Throws StaleEntity / UnknownEntity.
    EntityRecord erase(EntityId id) {
        Slot& s = slot_for(id);
        EntityRecord rec = std::move(s.rec);
        bytes_ -= rec.content_bytes();
        s.live = false;
        s.rec = EntityRecord{};
        ++s.generation; // stale handles can never look live again
        free_.push_back(id.slot());
        --live_count_;
        return rec;
    }

    const EntityRecord* find(EntityId id) const {
        if (id.slot() >= slots_.size()) return nullptr;
        const Slot& s = slots_[id.slot()];
        if (!s.live || s.generation != id.generation) return nullptr;
        return &s.rec;
    }

    EntityRecord* find_mutable(EntityId id) {
        return const_cast<EntityRecord*>(static_cast<const Store*>(this)->find(id));
    }

    bool is_live(EntityId id) const { return find(id) != nullptr; }

    std::uint64_t live_count() const { return live_count_; }

    // Entity + queued-event bytes, including the store's base overhead.
    std::uint64_t bytes() const { return bytes_; }

    void append_live_ids(std::vector<EntityId>& out) const {
        for (std::uint32_t i = 0; i < slots_.size(); ++i)
            if (slots_[i].live) out.push_back(EntityId::make(partition_, i, slots_[i].generation));
    }

    void push_event(GameplayEvent&& ev) {
        bytes_ += ev.payload.size();
        events_.push_back(std::move(ev));
    }

    std::deque<GameplayEvent>& events() { return events_; }
    const std::deque<GameplayEvent>& events() const { return events_; }

    void note_event_removed(const GameplayEvent& ev) { bytes_ -= ev.payload.size(); }

    std::uint64_t drain_all_into(ReclaimReport& report) {
        std::uint64_t n = events_.size();
        for (const auto& ev : events_) bytes_ -= ev.payload.size();
        events_.clear();
        report.events_discarded += n;
        return n;
    }

private:
    struct Slot {
        std::uint32_t generation = 0;
        bool live = false;
        EntityRecord rec;
    };

    Slot& slot_for(EntityId id) {
        if (id.partition() != partition_ || id.slot() >= slots_.size())
            throw EngineError(Errc::unknown_entity, to_string(id));
        Slot& s = slots_[id.slot()];
        if (!s.live || s.generation != id.generation)
            throw EngineError(Errc::stale_entity, to_string(id));
        return s;
    }

    std::uint32_t partition_;
    std::vector<Slot> slots_;
    std::vector<std::uint32_t> free_;
    std::deque<GameplayEvent> events_;
    std::uint64_t bytes_ = 0;
    std::uint64_t base_bytes_ = 0;
    std::uint64_t live_count_ = 0;
};

// The two-layer player-state store: exactly one global Store shared by every
// player plus one local Store per active player, with all entity and event
// traffic routed by Scope. The global Store is owned here and no other
// constructor path exists, so a second global store cannot be created.
//
// Event delivery: local events are consumed by their owner exactly once;
// global events are delivered exactly once to every player active when they
// were issued (players who join later never see them) and are garbage
// collected once every eligible player has consumed them.
class CapsuleStorage {
public:
    CapsuleStorage() : global_(0, 0) {}

    CapsuleStorage(const CapsuleStorage&) = delete;
    CapsuleStorage& operator=(const CapsuleStorage&) = delete;

    // -- player stores --

    void create_local(PlayerId p) {
        if (locals_.count(p))
            throw EngineError(Errc::duplicate_player, to_string(p));
        locals_.emplace(p, LocalState{Store(p.value + 1, kLocalStorageOverheadBytes), next_seq_});
    }

    bool has_local(PlayerId p) const { return locals_.count(p) != 0; }

    std::vector<PlayerId> active_players() const {
        std::vector<PlayerId> out;
        out.reserve(locals_.size());
        for (const auto& [p, _] : locals_) out.push_back(p);
        return out;
    }

    std::size_t local_count() const { return locals_.size(); }

    // Despawns every Local(p) entity (releasing its asset handles), discards
    // p's queued events and drops the store. Global state is untouched.
    ReclaimReport destroy_local(PlayerId p, AssetCache& cache) {
        auto it = locals_.find(p);
        if (it == locals_.end())
            throw EngineError(Errc::unknown_player, to_string(p));
        Store& store = it->second.store;
        ReclaimReport report{p};
        report.ram_bytes_reclaimed = store.bytes();

        std::vector<EntityId> ids;
        store.append_live_ids(ids);
        for (EntityId id : ids) {
            EntityRecord rec = store.erase(id);
            for (const AssetId& a : rec.assets) report.vram_bytes_reclaimed += cache.release(a);
            ++report.entities_despawned;
        }
        store.drain_all_into(report);
        locals_.erase(it);
        gc_global_events();
        return report;
    }

    // -- routing --

    Store& route(const Scope& scope) {
        if (scope.is_global()) return global_;
        auto it = locals_.find(scope.owner());
        if (it == locals_.end())
            throw EngineError(Errc::unknown_player, to_string(scope.owner()));
        return it->second.store;
    }

    const Store& route(const Scope& scope) const {
        return const_cast<CapsuleStorage*>(this)->route(scope);
    }

    Store& global_store() { return global_; }
    const Store& global_store() const { return global_; }

    // -- entities --

    EntityId spawn(Scope scope, EntityRecord&& rec) {
        rec.scope = scope;
        return route(scope).insert(std::move(rec));
    }

    // Removes the entity from its owning store; asset handles it held are
    // released against the cache. Returns freed (ram, vram) bytes.
    std::pair<std::uint64_t, std::uint64_t> despawn(EntityId id, AssetCache& cache) {
        Store& store = store_of(id);
        EntityRecord removed = store.erase(id); // throws StaleEntity on a dead handle
        std::uint64_t ram = removed.content_bytes();
        std::uint64_t vram = 0;
        for (const AssetId& a : removed.assets) vram += cache.release(a);
        return {ram, vram};
    }

    const EntityRecord* find(EntityId id) const {
        const Store* store = try_store_of(id);
        return store ? store->find(id) : nullptr;
    }

    EntityRecord* find_mutable(EntityId id) {
        return const_cast<EntityRecord*>(static_cast<const CapsuleStorage*>(this)->find(id));
    }

    bool is_live(EntityId id) const { return find(id) != nullptr; }

    // Global entities followed by the player's own local entities, ascending
    // by EntityId. The partition encoding makes that a simple concatenation.
    std::vector<EntityId> visible_set(PlayerId p) const {
        auto it = locals_.find(p);
        if (it == locals_.end())
            throw EngineError(Errc::unknown_player, to_string(p));
        std::vector<EntityId> out;
        out.reserve(std::size_t(global_.live_count() + it->second.store.live_count()));
        global_.append_live_ids(out);
        it->second.store.append_live_ids(out);
        return out;
    }

    std::uint64_t live_entity_count() const {
        std::uint64_t n = global_.live_count();
        for (const auto& [_, l] : locals_) n += l.store.live_count();
        return n;
    }

    // -- events --

    std::uint64_t emit(GameplayEvent ev) {
        Store& store = route(ev.scope); // validates scope before the seq is burned
        ev.seq = next_seq_++;
        std::uint64_t seq = ev.seq;
        store.push_event(std::move(ev));
        return seq;
    }

    // Global events not yet consumed by this player merged with the player's
    // local queue, ascending by seq, limited to events issued at or before
    // up_to_tick. Local entries are removed; global entries are retained
    // until every eligible active player has consumed them.
    std::vector<GameplayEvent> drain_for(PlayerId p, std::uint64_t up_to_tick) {
        auto it = locals_.find(p);
        if (it == locals_.end())
            throw EngineError(Errc::unknown_player, to_string(p));
        LocalState& local = it->second;

        std::vector<GameplayEvent> from_global;
        for (const GameplayEvent& ev : global_.events()) {
            if (ev.seq < local.global_cursor) continue;
            if (ev.tick_issued > up_to_tick) break;
            from_global.push_back(ev);
        }
        if (!from_global.empty()) local.global_cursor = from_global.back().seq + 1;

        std::vector<GameplayEvent> from_local;
        auto& q = local.store.events();
        while (!q.empty() && q.front().tick_issued <= up_to_tick) {
            local.store.note_event_removed(q.front());
            from_local.push_back(std::move(q.front()));
            q.pop_front();
        }

        std::vector<GameplayEvent> merged;
        merged.reserve(from_global.size() + from_local.size());
        std::merge(from_global.begin(), from_global.end(), from_local.begin(), from_local.end(),
                   std::back_inserter(merged),
                   [](const GameplayEvent& a, const GameplayEvent& b) { return a.seq < b.seq; });

        gc_global_events();
        return merged;
    }

    // Read-only view of global events issued at exactly this tick; used by
    // environment logic, which must react once per event rather than once per
    // player. Does not consume.
    std::vector<const GameplayEvent*> peek_global(std::uint64_t tick) const {
        std::vector<const GameplayEvent*> out;
        for (const GameplayEvent& ev : global_.events())
            if (ev.tick_issued == tick) out.push_back(&ev);
        return out;
    }

    // Drops global events no active player can still consume. With no active
    // players nothing can ever consume them (joiners get a seq cutoff), so
    // the queue clears entirely.
    void gc_global_events() {
        std::uint64_t min_cursor = next_seq_;
        for (const auto& [_, l] : locals_) min_cursor = std::min(min_cursor, l.global_cursor);
        auto& q = global_.events();
        while (!q.empty() && q.front().seq < min_cursor) {
            global_.note_event_removed(q.front());
            q.pop_front();
        }
    }

    std::uint64_t next_seq() const { return next_seq_; }

    // -- accounting --

    std::uint64_t global_bytes() const { return global_.bytes(); }

    std::uint64_t local_bytes(PlayerId p) const {
        auto it = locals_.find(p);
        if (it == locals_.end())
            throw EngineError(Errc::unknown_player, to_string(p));
        return it->second.store.bytes();
    }

    std::uint64_t total_local_bytes() const {
        std::uint64_t b = 0;
        for (const auto& [_, l] : locals_) b += l.store.bytes();
        return b;
    }

private:
    struct LocalState {
        Store store;
        // seq of the next global event this player may consume; initialized
        // at join so earlier broadcasts are never delivered to late joiners.
        std::uint64_t global_cursor;
    };

    Store& store_of(EntityId id) {
        if (id.partition() == 0) return global_;
        auto it = locals_.find(PlayerId{id.partition() - 1});
        if (it == locals_.end())
            throw EngineError(Errc::stale_entity,
                              to_string(id) + " (owner no longer active)");
        return it->second.store;
    }

    const Store* try_store_of(EntityId id) const {
        if (id.partition() == 0) return &global_;
        auto it = locals_.find(PlayerId{id.partition() - 1});
        return it == locals_.end() ? nullptr : &it->second.store;
    }

    Store global_;
    std::map<PlayerId, LocalState> locals_;
    std::uint64_t next_seq_ = 1;
};

} // namespace capsule
