/**
 * Client-side cue synthesis from cue parameters (no PCM streaming).
 *
 * Mirrors the server's render model: a windowed sine pulse at the cue pitch
 * plus the material's modal-impact layer, panned with constant-power gains.
 * The haptic channel is visualized only; `meterLevel` reports the amplitude
 * a wristband would receive while a cue is active.
 */

import type { CueParams, TimbrePreset } from "./protocol.js";

export interface CuePlayer {
  /** Play an audible cue; implementations must be fire-and-forget. */
  play(cue: CueParams, preset: TimbrePreset | undefined): void;
}

export function panGains(pan: number): { left: number; right: number } {
  const angle = ((pan + 1) * Math.PI) / 4;
  return { left: Math.cos(angle), right: Math.sin(angle) };
}

/** WebAudio implementation; constructed lazily after a user gesture. */
export class WebAudioCuePlayer implements CuePlayer {
  private ctx: AudioContext | null = null;

  get unlocked(): boolean {
    return this.ctx !== null && this.ctx.state === "running";
  }

  async unlock(): Promise<void> {
    if (this.ctx === null) {
      this.ctx = new AudioContext();
    }
    if (this.ctx.state !== "running") {
      await this.ctx.resume();
    }
  }

  play(cue: CueParams, preset: TimbrePreset | undefined): void {
    if (cue.kind === "silent" || this.ctx === null || this.ctx.state !== "running") {
      return;
    }
    const ctx = this.ctx;
    const now = ctx.currentTime;
    const gains = panGains(cue.pan);

    const merger = ctx.createChannelMerger(2);
    merger.connect(ctx.destination);
    const left = ctx.createGain();
    const right = ctx.createGain();
    left.gain.value = gains.left * 0.4;
    right.gain.value = gains.right * 0.4;
    left.connect(merger, 0, 0);
    right.connect(merger, 0, 1);

    const voice = (freq: number, gain: number, decayS: number | null) => {
      const osc = ctx.createOscillator();
      osc.type = "sine";
      osc.frequency.value = freq;
      const env = ctx.createGain();
      env.gain.setValueAtTime(0, now);
      env.gain.linearRampToValueAtTime(gain, now + 0.005);
      if (decayS !== null) {
        env.gain.exponentialRampToValueAtTime(Math.max(gain * 0.001, 1e-5), now + decayS);
      } else {
        env.gain.setValueAtTime(gain, now + cue.duration_s - 0.005);
        env.gain.linearRampToValueAtTime(0, now + cue.duration_s);
      }
      osc.connect(env);
      env.connect(left);
      env.connect(right);
      osc.start(now);
      osc.stop(now + Math.max(cue.duration_s, decayS ?? 0) + 0.02);
    };

    voice(cue.pitch_hz, 1.0, null); // the pulse
    if (cue.kind === "sonohaptics" && preset) {
      for (const [ratio, gain, decay] of preset.modes) {
        voice(preset.base_hz * ratio, gain * 0.5, Math.min(decay, 1.5));
      }
    }
  }
}
