#include "mqc/oracle.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstring>

#include "mqc/biquad.hpp"
#include "mqc/errors.hpp"
#include "mqc/io.hpp"

namespace mqc {

OracleCache::OracleCache(std::string path) : path_(std::move(path)) {
    if (!file_exists(path_)) return;
    for (const auto& line : read_lines(path_)) {
        if (line.empty() || line[0] == '#') continue;
        auto parts = split(line, '\t');
        if (parts.size() != 3) throw IoError("bad cache line: " + line);
        OracleEntry e;
        e.h = std::stoull(parts[1]);
        e.provenance = parts[2];
        auto [it, fresh] = map_.emplace(parts[0], e);
        if (!fresh && it->second.h != e.h) throw Error("conflicting cache entries for " + parts[0]);
    }
}

std::optional<u64> OracleCache::get(const std::string& key) const {
    auto it = map_.find(key);
    if (it == map_.end()) return std::nullopt;
    return it->second.h;
}

void OracleCache::put(const std::string& key, u64 h, const std::string& provenance) {
    auto it = map_.find(key);
    if (it != map_.end()) {
        if (it->second.h != h)
            throw Error("cache conflict for " + key + ": " + std::to_string(it->second.h) + " vs " +
                        std::to_string(h));
        return;
    }
    map_.emplace(key, OracleEntry{h, provenance});
    dirty_ = true;
}

void OracleCache::save() {
    if (!dirty_ || path_.empty()) return;
    std::string out;
    for (const auto& [key, e] : map_)
        out += key + "\t" + std::to_string(e.h) + "\t" + e.provenance + "\n";
    atomic_write_file(path_, out);
    dirty_ = false;
}

// ---------------------------------------------------------------------------

class ResponderProcess {
public:
    explicit ResponderProcess(const std::string& command) {
        int to_child[2], from_child[2];
        if (pipe(to_child) != 0 || pipe(from_child) != 0) throw IoError("pipe failed");
        pid_ = fork();
        if (pid_ < 0) throw IoError("fork failed");
        if (pid_ == 0) {
            dup2(to_child[0], STDIN_FILENO);
            dup2(from_child[1], STDOUT_FILENO);
            close(to_child[0]);
            close(to_child[1]);
            close(from_child[0]);
            close(from_child[1]);
            execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
            _exit(127);
        }
        close(to_child[0]);
        close(from_child[1]);
        in_fd_ = to_child[1];
        out_fd_ = from_child[0];
        signal(SIGPIPE, SIG_IGN);
    }

    ~ResponderProcess() { shutdown(); }

    void shutdown() {
        if (in_fd_ >= 0) close(in_fd_);
        if (out_fd_ >= 0) close(out_fd_);
        in_fd_ = out_fd_ = -1;
        if (pid_ > 0) {
            kill(pid_, SIGTERM);
            int status = 0;
            for (int i = 0; i < 50 && waitpid(pid_, &status, WNOHANG) == 0; ++i) usleep(20000);
            if (waitpid(pid_, &status, WNOHANG) == 0) {
                kill(pid_, SIGKILL);
                waitpid(pid_, &status, 0);
            }
            pid_ = -1;
        }
    }

    std::string round_trip(const std::string& line, double timeout_secs) {
        std::string msg = line + "\n";
        size_t off = 0;
        while (off < msg.size()) {
            ssize_t k = write(in_fd_, msg.data() + off, msg.size() - off);
            if (k < 0) {
                if (errno == EINTR) continue;
                throw ResponderError("responder stdin closed");
            }
            off += size_t(k);
        }
        auto deadline = std::chrono::steady_clock::now() + std::chrono::duration<double>(timeout_secs);
        for (;;) {
            auto nl = buf_.find('\n');
            if (nl != std::string::npos) {
                std::string reply = buf_.substr(0, nl);
                buf_.erase(0, nl + 1);
                if (!reply.empty() && reply.back() == '\r') reply.pop_back();
                return reply;
            }
            auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
                            deadline - std::chrono::steady_clock::now())
                            .count();
            if (left <= 0) throw TimeoutError("responder did not answer in time");
            struct pollfd pfd{out_fd_, POLLIN, 0};
            int pr = poll(&pfd, 1, static_cast<int>(std::min<long long>(left, 60000)));
            if (pr < 0) {
                if (errno == EINTR) continue;
                throw ResponderError("poll failed on responder stream");
            }
            if (pr == 0) continue;
            char chunk[4096];
            ssize_t k = read(out_fd_, chunk, sizeof chunk);
            if (k < 0) {
                if (errno == EINTR) continue;
                throw ResponderError("read failed on responder stream");
            }
            if (k == 0) throw ResponderError("responder closed its output stream");
            buf_.append(chunk, size_t(k));
        }
    }

private:
    pid_t pid_ = -1;
    int in_fd_ = -1;
    int out_fd_ = -1;
    std::string buf_;
};

// ---------------------------------------------------------------------------

Oracle::Oracle(QuadCache& qcache, OracleCache cache) : qcache_(qcache), cache_(std::move(cache)) {}

Oracle::~Oracle() = default;

void Oracle::configure_responder(std::string command, double timeout_secs) {
    command_ = std::move(command);
    timeout_secs_ = timeout_secs;
    proc_.reset();
    // identifier: basename of the first token
    std::string head = command_.substr(0, command_.find_first_of(" \t"));
    auto slash = head.find_last_of('/');
    responder_id_ = slash == std::string::npos ? head : head.substr(slash + 1);
    if (responder_id_.empty()) responder_id_ = "external";
}

std::string Oracle::wire_request(const RadicandList& primitive) const {
    std::string req;
    for (const auto& r : primitive) {
        if (!req.empty()) req += ' ';
        req += std::to_string(r.value);
    }
    return req;
}

static u64 parse_reply(const std::string& reply) {
    if (reply.rfind("ERR", 0) == 0) throw ResponderError(reply);
    if (reply.empty()) throw ResponderError("empty reply");
    size_t pos = 0;
    u64 h = 0;
    try {
        h = std::stoull(reply, &pos);
    } catch (const std::exception&) {
        throw ResponderError("malformed reply: " + reply);
    }
    if (pos != reply.size()) throw ResponderError("malformed reply: " + reply);
    if (h == 0) throw ResponderError("zero class number in reply");
    return h;
}

u64 Oracle::external_query(const RadicandList& primitive) {
    if (!responder_configured()) throw OracleUnavailable("no responder configured");
    std::string req = wire_request(primitive);
    if (!proc_) proc_ = std::make_unique<ResponderProcess>(command_);
    try {
        return parse_reply(proc_->round_trip(req, timeout_secs_));
    } catch (const TimeoutError&) {
        // one respawn-and-retry, then give up
        proc_ = std::make_unique<ResponderProcess>(command_);
        return parse_reply(proc_->round_trip(req, timeout_secs_));
    } catch (const ResponderError&) {
        proc_.reset(); // do not reuse a stream in an unknown state
        throw;
    }
}

u64 Oracle::class_number(const RadicandList& primitive) {
    RadicandList all = complete_radicand_list(primitive);
    SignSplit sp = split_signs(all);
    if (sp.neg.empty()) throw Error("oracle handles imaginary fields only");
    if (all.size() == 1) return qcache_.class_number(all[0].value);
    if (all.size() == 3) {
        u64 h = class_number_biquad(sp.neg[0], sp.neg[1], qcache_);
        if (responder_configured()) {
            u64 hx = external_query(primitive);
            if (hx != h)
                throw Error("responder disagrees on " + canonical_key(sp.neg) + ": " +
                            std::to_string(hx) + " vs " + std::to_string(h));
        }
        return h;
    }
    std::string key = canonical_key(sp.neg);
    if (auto hit = cache_.get(key)) return *hit;
    u64 h = external_query(primitive);
    cache_.put(key, h, "external:" + responder_id_);
    return h;
}

} // namespace mqc
