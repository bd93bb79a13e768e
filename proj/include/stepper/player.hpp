#pragma once

#include "stepper/morph.hpp"
#include "stepper/trace.hpp"

#include <cstddef>
#include <optional>
#include <string>

namespace stepper::player {

class Playable {
 public:
  virtual ~Playable() = default;
  virtual void rewind() = 0;
  virtual void back() = 0;
  virtual void play() = 0;
  virtual void pause() = 0;
  virtual void next() = 0;
  virtual void fast_forward() = 0;
  virtual bool playing() const = 0;
};

class Animation {
 public:
  virtual ~Animation() = default;
  /// Moves the clock forward; true while there is still something to animate.
  virtual bool advance(int timestep_ms) = 0;
};

enum class Mode { idle, animating_forward, animating_backward, playing, paused };

/// Walks a reduction trace, animating each step as a morph.
class Player : public Playable, public Animation {
 public:
  static constexpr int default_step_duration_ms = 700;

  explicit Player(eval::ReductionTrace trace, int step_duration_ms = default_step_duration_ms);

  void rewind() override;
  void back() override;
  void play() override;
  void pause() override;
  void next() override;
  void fast_forward() override;
  bool playing() const override;
  bool advance(int timestep_ms) override;

  Mode mode() const { return mode_; }
  std::size_t index() const { return index_; }
  int elapsed_ms() const { return elapsed_; }
  int step_duration_ms() const { return duration_; }
  const std::optional<morph::Morph>& active_morph() const { return morph_; }
  double progress() const { return morph_ ? morph_->progress() : 0.0; }

  /// True when no step follows the current snapshot.
  bool at_end();

  /// Message about the last navigation (truncation, normal form), if any.
  const std::string& notice() const { return notice_; }

  const eval::ReductionTrace& trace() const { return trace_; }
  const eval::Snapshot& current() const { return trace_[index_]; }

  /// The frame the player shows right now.
  render::CellGrid render(render::Style style = render::Style::unicode) const;

 private:
  bool start_forward();
  void commit();
  void drop_morph();

  eval::ReductionTrace trace_;
  int duration_;
  std::size_t index_ = 0;
  Mode mode_ = Mode::idle;
  Mode paused_from_ = Mode::idle;
  std::optional<morph::Morph> morph_;
  int direction_ = 0;
  int elapsed_ = 0;
  std::string notice_;
};

}  // namespace stepper::player
