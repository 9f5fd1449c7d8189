/** Browser bootstrap: binds the controller to a root element via event delegation. */

import { ServiceClient } from "./api.js";
import { AppController } from "./controller.js";

export function mount(root: HTMLElement, baseUrl = ""): AppController {
  const client = new ServiceClient(baseUrl);
  const controller = new AppController(client, (html, state) => {
    root.innerHTML = html;
    // keep the run id in the fragment so a reload can resume from service state
    if (state.runId && window.location.hash !== `#run=${state.runId}`) {
      window.history.replaceState(null, "", `#run=${state.runId}`);
    }
  });

  root.addEventListener("submit", (event) => {
    const form = event.target as HTMLFormElement;
    event.preventDefault();
    if (form.dataset.action === "submit-topic") {
      const input = form.querySelector<HTMLInputElement>("input[name=topic]");
      if (input?.value) void controller.submitTopic(input.value);
    } else if (form.dataset.action === "search-theme") {
      const input = form.querySelector<HTMLInputElement>("input[name=custom-theme]");
      if (input?.value) void controller.chooseTheme(input.value);
    }
  });

  root.addEventListener("click", (event) => {
    const target = (event.target as HTMLElement).closest<HTMLElement>("[data-action]");
    if (!target) return;
    switch (target.dataset.action) {
      case "choose-source":
        void controller.chooseSource(target.dataset.source ?? "");
        break;
      case "choose-theme":
        void controller.chooseTheme(target.dataset.theme ?? "");
        break;
      case "toggle-quote":
        controller.toggle(
          target.dataset.group ?? "",
          target.dataset.theme ?? "",
          target.dataset.quote ?? "",
        );
        break;
      case "download":
        void controller.download().then((markdown) => {
          if (markdown === undefined) return;
          const blob = new Blob([markdown], { type: "text/markdown" });
          const link = document.createElement("a");
          link.href = URL.createObjectURL(blob);
          link.download = "report.md";
          link.click();
          URL.revokeObjectURL(link.href);
        });
        break;
      case "retry":
        void controller.start();
        break;
    }
  });

  const resumed = window.location.hash.match(/^#run=(.+)$/);
  if (resumed) {
    void controller.resumeRun(resumed[1]);
  } else {
    void controller.start();
  }
  return controller;
}
