/** WebSocket transport speaking the NDJSON dialect (one message per frame). */

import { encodeMessage, parseServerMessage, type ClientMessage, type ServerMessage } from "./protocol.js";
import type { Transport } from "./session.js";

export class WebSocketTransport implements Transport {
  private socket: WebSocket;
  private open = false;

  constructor(
    url: string,
    private readonly onMessage: (message: ServerMessage) => void,
    private readonly onStatus: (connected: boolean) => void,
  ) {
    this.socket = new WebSocket(url);
    this.socket.addEventListener("open", () => {
      this.open = true;
      this.onStatus(true);
    });
    this.socket.addEventListener("close", () => {
      this.open = false;
      this.onStatus(false);
    });
    this.socket.addEventListener("message", (event) => {
      for (const line of String(event.data).split("\n")) {
        if (line.trim()) {
          this.onMessage(parseServerMessage(line));
        }
      }
    });
  }

  get connected(): boolean {
    return this.open;
  }

  send(message: ClientMessage): void {
    this.socket.send(encodeMessage(message).trimEnd());
  }

  close(): void {
    this.socket.close();
  }
}
