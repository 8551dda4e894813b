#pragma once

// Exact cover by dancing links (Knuth's Algorithm X).  Deterministic:
// branching column is the smallest column, ties broken by lowest column id,
// and rows are tried in insertion order, so a given instance always yields
// the same solution.  Search is bounded by a node budget and a wall clock.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace qcover {

class ExactCover {
  public:
    explicit ExactCover(int n_cols) : ncols_(n_cols) {
        int total = n_cols + 1;
        left_.resize(total);
        right_.resize(total);
        up_.resize(total);
        down_.resize(total);
        col_of_.resize(total);
        size_.assign(n_cols, 0);
        for (int i = 0; i <= n_cols; ++i) {
            left_[i] = i == 0 ? n_cols : i - 1;
            right_[i] = i == n_cols ? 0 : i + 1;
            up_[i] = down_[i] = i;
            col_of_[i] = i - 1;
        }
    }

    int add_row(const std::vector<int>& cols) {
        if (cols.empty()) throw std::invalid_argument("ExactCover: empty row");
        int row_id = static_cast<int>(row_first_.size());
        int first = -1, prev = -1;
        for (int c : cols) {
            if (c < 0 || c >= ncols_) throw std::invalid_argument("ExactCover: bad column");
            int node = new_node();
            col_of_[node] = c;
            row_of_.push_back(row_id);
            // vertical insert above header
            int header = c + 1;
            up_[node] = up_[header];
            down_[node] = header;
            down_[up_[header]] = node;
            up_[header] = node;
            ++size_[c];
            if (first < 0) {
                first = node;
                left_[node] = right_[node] = node;
            } else {
                left_[node] = prev;
                right_[node] = right_[prev];
                left_[right_[prev]] = node;
                right_[prev] = node;
            }
            prev = node;
        }
        row_first_.push_back(first);
        return row_id;
    }

    enum class Status { solved, unsolvable, budget_exhausted };

    struct Result {
        Status status = Status::unsolvable;
        std::vector<int> rows; // selected row ids, ascending
        std::uint64_t nodes = 0;
    };

    Result solve(std::uint64_t max_nodes = UINT64_MAX, double max_seconds = 1e18) {
        Result res;
        deadline_ = std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(std::min(max_seconds, 1e9)));
        max_nodes_ = max_nodes;
        nodes_ = 0;
        stack_.clear();
        out_of_budget_ = false;
        bool ok = search();
        res.nodes = nodes_;
        if (ok) {
            res.status = Status::solved;
            for (int node : stack_) res.rows.push_back(row_of_[node - ncols_ - 1]);
            std::sort(res.rows.begin(), res.rows.end());
        } else {
            res.status = out_of_budget_ ? Status::budget_exhausted : Status::unsolvable;
        }
        return res;
    }

  private:
    int ncols_;
    std::vector<int> left_, right_, up_, down_, col_of_, size_;
    std::vector<int> row_of_;    // per data node (offset by ncols_+1)
    std::vector<int> row_first_; // first node of each row
    std::vector<int> stack_;
    std::uint64_t nodes_ = 0, max_nodes_ = 0;
    std::chrono::steady_clock::time_point deadline_;
    bool out_of_budget_ = false;

    int new_node() {
        int id = static_cast<int>(left_.size());
        left_.push_back(id);
        right_.push_back(id);
        up_.push_back(id);
        down_.push_back(id);
        col_of_.push_back(-1);
        return id;
    }

    void cover(int c) {
        int header = c + 1;
        right_[left_[header]] = right_[header];
        left_[right_[header]] = left_[header];
        for (int i = down_[header]; i != header; i = down_[i])
            for (int j = right_[i]; j != i; j = right_[j]) {
                down_[up_[j]] = down_[j];
                up_[down_[j]] = up_[j];
                --size_[col_of_[j]];
            }
    }

    void uncover(int c) {
        int header = c + 1;
        for (int i = up_[header]; i != header; i = up_[i])
            for (int j = left_[i]; j != i; j = left_[j]) {
                ++size_[col_of_[j]];
                down_[up_[j]] = j;
                up_[down_[j]] = j;
            }
        right_[left_[header]] = header;
        left_[right_[header]] = header;
    }

    bool search() {
        if (right_[0] == 0) return true;
        if (++nodes_ > max_nodes_ ||
            (nodes_ % 4096 == 0 && std::chrono::steady_clock::now() > deadline_)) {
            out_of_budget_ = true;
            return false;
        }
        int best = -1, best_size = INT32_MAX;
        for (int h = right_[0]; h != 0; h = right_[h]) {
            int c = h - 1;
            if (size_[c] < best_size) {
                best_size = size_[c];
                best = c;
                if (best_size <= 1) break; // forced or dead; no better choice exists
            }
        }
        if (best_size == 0) return false;
        cover(best);
        int header = best + 1;
        for (int i = down_[header]; i != header; i = down_[i]) {
            stack_.push_back(i);
            for (int j = right_[i]; j != i; j = right_[j]) cover(col_of_[j]);
            if (search()) return true;
            for (int j = left_[i]; j != i; j = left_[j]) uncover(col_of_[j]);
            stack_.pop_back();
            if (out_of_budget_) break;
        }
        uncover(best);
        return false;
    }
};

} // namespace qcover
