import { mountApp } from "./app";

const container = document.getElementById("app");
if (container) {
  const app = mountApp(container);
  void app.submitNow(); // first render needs a first answer
}
