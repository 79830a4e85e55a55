/** Allowlist sanitizer for HTML-valued metadata (notebook bodies are
 * user-authored; never inject them raw). */

const ALLOWED_TAGS = new Set([
  'a', 'b', 'strong', 'i', 'em', 'u', 's', 'p', 'br', 'hr', 'blockquote',
  'ul', 'ol', 'li', 'h1', 'h2', 'h3', 'h4', 'h5', 'h6',
  'table', 'thead', 'tbody', 'tr', 'td', 'th', 'caption',
  'span', 'div', 'code', 'pre', 'sub', 'sup',
]);

function cleanChildren(source: Node, target: Node, doc: Document): void {
  for (const child of Array.from(source.childNodes)) {
    if (child.nodeType === Node.TEXT_NODE) {
      target.appendChild(doc.createTextNode(child.textContent ?? ''));
      continue;
    }
    if (child.nodeType !== Node.ELEMENT_NODE) continue;
    const element = child as Element;
    const tag = element.tagName.toLowerCase();
    if (!ALLOWED_TAGS.has(tag)) {
      // drop the tag, keep benign descendants (script/style lose content)
      if (tag !== 'script' && tag !== 'style' && tag !== 'iframe') {
        cleanChildren(element, target, doc);
      }
      continue;
    }
    const clean = doc.createElement(tag);
    if (tag === 'a') {
      const href = element.getAttribute('href') ?? '';
      if (/^https?:\/\//i.test(href)) {
        clean.setAttribute('href', href);
        clean.setAttribute('rel', 'noopener noreferrer');
        clean.setAttribute('target', '_blank');
      }
    }
    cleanChildren(element, clean, doc);
    target.appendChild(clean);
  }
}

/** Parse untrusted HTML and return a detached, sanitized container. */
export function sanitizeHtml(html: string): HTMLElement {
  const doc = new DOMParser().parseFromString(html, 'text/html');
  const container = document.createElement('div');
  container.className = 'rich-text';
  cleanChildren(doc.body, container, document);
  return container;
}
