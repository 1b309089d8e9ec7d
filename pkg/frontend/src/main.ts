/**
 * Browser entry point: canvas scene view, pointer-as-gaze, audio playback,
 * haptic meter, and interaction toolbar.
 *
 * Connects to `sonohaptics serve --ws`; configure with
 * `?host=127.0.0.1&port=8787` query parameters.
 */

import { WebAudioCuePlayer } from "./audio.js";
import { pointerToGaze, projectObject, type ObjectRect } from "./projection.js";
import type { SceneData } from "./protocol.js";
import { ClientSession, interactionBindings } from "./session.js";
import { WebSocketTransport } from "./transport.js";

const params = new URLSearchParams(window.location.search);
const host = params.get("host") ?? window.location.hostname ?? "127.0.0.1";
const port = params.get("port") ?? "8787";

const canvas = document.getElementById("view") as HTMLCanvasElement;
const ctx2d = canvas.getContext("2d")!;
const statusEl = document.getElementById("status")!;
const modeEl = document.getElementById("mode")!;
const meterEl = document.getElementById("meter-fill") as HTMLElement;
const tickerEl = document.getElementById("ticker")!;
const audioPrompt = document.getElementById("audio-prompt")!;

const player = new WebAudioCuePlayer();
let session: ClientSession;
let flash: { id: string; color: string; until: number } | null = null;
let rects: ObjectRect[] = [];

function ticker(text: string): void {
  const line = document.createElement("div");
  line.textContent = text;
  tickerEl.prepend(line);
  while (tickerEl.childElementCount > 20) {
    tickerEl.lastElementChild?.remove();
  }
}

function render(): void {
  const scene = session.scene;
  ctx2d.fillStyle = "#15181d";
  ctx2d.fillRect(0, 0, canvas.width, canvas.height);
  if (!scene) {
    return;
  }
  const viewport = { width: canvas.width, height: canvas.height };
  rects = scene.objects.filter((o) => !o.hidden).map((o) => projectObject(o, viewport));
  const now = performance.now();
  for (const rect of rects) {
    const dimmed =
      session.mode === "local" &&
      session.localCluster.length > 0 &&
      !session.localCluster.includes(rect.id);
    ctx2d.globalAlpha = dimmed ? 0.35 : 1.0;
    ctx2d.fillStyle = rect.fill;
    ctx2d.fillRect(rect.x, rect.y, rect.width, rect.height);
    ctx2d.globalAlpha = 1.0;
    if (session.hovered === rect.id) {
      ctx2d.strokeStyle = "#8ecaff";
      ctx2d.lineWidth = 2;
      ctx2d.strokeRect(rect.x - 2, rect.y - 2, rect.width + 4, rect.height + 4);
    }
    if (flash && flash.id === rect.id && now < flash.until) {
      ctx2d.strokeStyle = flash.color;
      ctx2d.lineWidth = 4;
      ctx2d.strokeRect(rect.x - 4, rect.y - 4, rect.width + 8, rect.height + 8);
    }
  }
  meterEl.style.width = `${session.meterLevel * 100}%`;
  modeEl.textContent = session.mode;
  requestAnimationFrame(render);
}

function connect(): void {
  const transport = new WebSocketTransport(
    `ws://${host}:${port}/ws`,
    (message) => session.receive(message),
    (connected) => {
      statusEl.textContent = connected ? "connected" : "disconnected";
      statusEl.className = connected ? "ok" : "bad";
      document.querySelectorAll("button").forEach((b) => (b.disabled = !connected));
      if (connected) {
        session.hello();
        session.activate();
      }
    },
  );

  session = new ClientSession(transport, player, {
    onSceneLoaded: (scene: SceneData) => ticker(`scene "${scene.name}" loaded`),
    onSelection: (object) => {
      ticker(`selection: ${object ?? "(none)"}`);
      if (object) {
        const target = (document.getElementById("target") as HTMLInputElement).value.trim();
        const color = !target ? "#ffffff" : object === target ? "#4caf50" : "#f44336";
        flash = { id: object, color, until: performance.now() + 600 };
      }
    },
    onError: (msg) => ticker(`error: ${msg}`),
  });
}

connect();
requestAnimationFrame(render);

canvas.addEventListener("pointermove", (event) => {
  const bounds = canvas.getBoundingClientRect();
  const gaze = pointerToGaze(
    ((event.clientX - bounds.left) / bounds.width) * canvas.width,
    ((event.clientY - bounds.top) / bounds.height) * canvas.height,
    { width: canvas.width, height: canvas.height },
    performance.now() / 1000,
  );
  session.gaze(gaze, performance.now());
});

const bindings = interactionBindings(session!);
window.addEventListener("keydown", (event) => {
  if (event.key === " ") {
    event.preventDefault();
  }
  bindings.keydown(event.key);
});
window.addEventListener("keyup", (event) => bindings.keyup(event.key));
canvas.addEventListener("click", () => bindings.click());

audioPrompt.addEventListener("click", async () => {
  await player.unlock();
  audioPrompt.classList.add("hidden");
});

document.getElementById("btn-activate")!.addEventListener("click", () => session.activate());
document.getElementById("btn-deactivate")!.addEventListener("click", () => session.deactivate());
