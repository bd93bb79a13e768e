#include "stepper/player.hpp"

#include <algorithm>

namespace stepper::player {

Player::Player(eval::ReductionTrace trace, int step_duration_ms)
    : trace_(std::move(trace)), duration_(std::max(step_duration_ms, 1)) {}

bool Player::at_end() { return !trace_.reach(index_ + 1); }

void Player::drop_morph() {
  morph_.reset();
  direction_ = 0;
  elapsed_ = 0;
  mode_ = Mode::idle;
  paused_from_ = Mode::idle;
}

void Player::commit() {
  if (!morph_) return;
  if (direction_ > 0) ++index_;
  if (direction_ < 0) --index_;
  drop_morph();
}

bool Player::start_forward() {
  if (at_end()) {
    notice_ = trace_.truncated() ? "stopped after " + std::to_string(trace_.max_steps()) + " steps"
                                 : "normal form";
    return false;
  }
  const auto& next = trace_[index_ + 1];
  morph_.emplace(trace_[index_].expr, next.expr, next.link);
  direction_ = 1;
  elapsed_ = 0;
  return true;
}

void Player::next() {
  commit();
  notice_.clear();
  if (start_forward()) mode_ = Mode::animating_forward;
}

void Player::back() {
  commit();
  notice_.clear();
  if (index_ == 0) return;
  const auto& here = trace_[index_];
  morph_.emplace(morph::Morph(trace_[index_ - 1].expr, here.expr, here.link).reversed());
  morph_->set_progress(0);
  direction_ = -1;
  elapsed_ = 0;
  mode_ = Mode::animating_backward;
}

void Player::play() {
  notice_.clear();
  if (mode_ == Mode::paused) mode_ = paused_from_;
  if (morph_ && direction_ < 0) commit();
  if (morph_) {
    mode_ = Mode::playing;
    return;
  }
  if (start_forward()) mode_ = Mode::playing;
}

void Player::pause() {
  if (!morph_ || mode_ == Mode::paused) return;
  paused_from_ = mode_;
  mode_ = Mode::paused;
}

bool Player::playing() const { return mode_ == Mode::playing || mode_ == Mode::animating_forward; }

void Player::rewind() {
  drop_morph();
  notice_.clear();
  index_ = 0;
}

void Player::fast_forward() {
  commit();
  notice_.clear();
  trace_.extend_all();
  index_ = trace_.size() - 1;
  if (trace_.truncated()) {
    notice_ = "stopped after " + std::to_string(trace_.max_steps()) + " steps";
  }
}

bool Player::advance(int timestep_ms) {
  if (!morph_ || mode_ == Mode::idle || mode_ == Mode::paused) return false;
  elapsed_ += std::max(timestep_ms, 0);
  morph_->set_progress(static_cast<double>(elapsed_) / duration_);
  if (elapsed_ < duration_) return true;
  const bool chained = mode_ == Mode::playing;
  commit();
  if (chained && start_forward()) {
    mode_ = Mode::playing;
    return true;
  }
  return false;
}

render::CellGrid Player::render(render::Style style) const {
  if (morph_) return morph_->render(style);
  return render::render_static(current().expr, style);
}

}  // namespace stepper::player
